import json
from pathlib import Path

import pytest

from pseudoiso.cli import default_corpus
from pseudoiso.words import GroupPresentation

CORPUS = default_corpus()


def corpus_presentations() -> list[tuple[str, GroupPresentation]]:
    out = []
    for path in sorted(CORPUS.glob("*.json")):
        data = json.loads(path.read_text())
        if "generators" in data:
            out.append((path.stem, GroupPresentation.from_json(data)))
    return out


def corpus_simplicial() -> list[str]:
    return [p.stem for p in sorted(CORPUS.glob("*.json")) if "simplices" in json.loads(p.read_text())]


def P(n, *relators):
    return GroupPresentation(n, tuple(tuple(r) for r in relators))


@pytest.fixture
def tmp_json(tmp_path):
    def write(name, data):
        p = Path(tmp_path) / name
        p.write_text(json.dumps(data))
        return str(p)
    return write


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    """Store and print the verdict for one acceptance criterion."""
    ACCEPTANCE[criterion] = (ok, detail)
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} ({detail})")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[c]
        terminalreporter.write_line(f"criterion {c}: {'PASS' if ok else 'FAIL'} ({detail})")
