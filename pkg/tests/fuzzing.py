"""Seeded generator of malformed ring-definition files."""

import random

SEEDS = [
    "ring.kind=zn\nring.params=4\n[derivation]\nzero\n",
    "ring.kind = truncpoly\nring.params = 2, 2\n[derivation]\nD(g1) = 0\nD(g2) = g1\n",
    "ring.kind=matrix\nring.params=2,2\n[derivation]\ninner = E12\n",
    "ring.kind=product\nring.factors = zn(2) * matrix(2,2)\n[derivation]\ninner = E12_2\n",
    "ring.kind=structure\nring.params=2,2\nring.labels=a,b\n[structure]\na*a = a\nb*b = b  # idempotents\n"
    "[derivation]\nD(a)=0\nD(b) = 0\n",
    "[ring]\nring.kind=triangular\nring.params=2,3\n",
]

ALPHABET = "gDx=*+-()[]#,.^ \n\t0123456789abcdeEkrinpzuot_é٣\x00"
TOKENS = ["ring.kind", "ring.params", "ring.factors", "ring.labels", "[structure]", "[derivation]",
          "[ring]", "zero", "inner", "D(", "g1", "g99", "E12", "*", "=", "\n", "#",
          "99999999999999999999999999999", "-", "+", "matrix(2,2)", "zn(0)", "structure", "product"]


def mutate(rng: random.Random, text: str) -> str:
    chars = list(text)
    for _ in range(rng.randint(1, 6)):
        op = rng.randrange(5)
        pos = rng.randrange(len(chars) + 1)
        if op == 0 and chars:
            del chars[min(pos, len(chars) - 1)]
        elif op == 1:
            chars.insert(pos, rng.choice(ALPHABET))
        elif op == 2:
            chars[pos:pos] = list(rng.choice(TOKENS))
        elif op == 3 and chars:
            a, b = sorted((rng.randrange(len(chars)), rng.randrange(len(chars))))
            chars[a:b] = chars[a:b][::-1]
        else:
            chars = chars[:pos]
    return "".join(chars)


def fuzz_inputs(seed: int, count: int):
    rng = random.Random(seed)
    for i in range(count):
        if i % 10 == 0:
            yield "".join(rng.choice(ALPHABET) for _ in range(rng.randint(0, 60)))
        else:
            yield mutate(rng, rng.choice(SEEDS))
