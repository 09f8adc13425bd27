import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"

# criterion number -> (description, list of case outcomes)
ACCEPTANCE: dict[int, tuple[str, list[bool]]] = {}


def record(number: int, description: str, ok: bool) -> None:
    ACCEPTANCE.setdefault(number, (description, []))[1].append(ok)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        description, outcomes = ACCEPTANCE[number]
        status = "PASS" if all(outcomes) else "FAIL"
        detail = f" ({outcomes.count(True)}/{len(outcomes)} cases)" if len(outcomes) > 1 else ""
        terminalreporter.write_line(f"criterion {number:2d}: {status}{detail}  {description}")
