"""Command-line front end.

    pseudoiso invariant INPUT [--k K] [--route group|simplicial|both]
    pseudoiso compare A B --maps MAPS
    pseudoiso verify [CORPUS_DIR]
    pseudoiso massey INPUT --classes "1,0;1,0;0,1"
    pseudoiso dk INPUT [--k K]
    pseudoiso ak INPUT [--k K]
    pseudoiso gamma INPUT --word "[1,2,-1,-2]" [--k K]

INPUT is either a presentation {"generators": n, "relators": [[1,2,-1,-2], ...]}
or a simplicial set {"simplices": {...}}.  Output is JSON with sorted keys.
Exit codes: 0 success, 1 suite failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from importlib import resources
from pathlib import Path
from typing import Any

from .cobar import a_k, algebra_iso_check, induced_map_check
from .grouprings import HypothesisError, build_p2_p3, d_k, gamma_member
from .massey import (
    build_group_context,
    build_simplicial_context,
    compare_contexts,
    compare_routes,
    invariant_class,
    perturbed_context,
    presentation_context,
    triple_massey,
)
from .moves import generated_maps, sphere_collapse, sphere_filling
from .simplicial import SimplicialSet, build_simplicial_set, cohomology, presentation_complex, pseudo_homeo_check
from .tensorspace import InconsistencyError, PreconditionError
from .words import GroupPresentation
from .zlinalg import AbelianPresentation, InputError

log = logging.getLogger("pseudoiso")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def parse_source(data: Any) -> GroupPresentation | SimplicialSet:
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    if "simplices" in data:
        return build_simplicial_set(data)
    if "generators" in data:
        return GroupPresentation.from_json(data)
    raise InputError("input needs either 'generators' or 'simplices'")


def abelian_json(A: AbelianPresentation) -> dict:
    return {"free_rank": A.free_rank, "torsion": list(A.torsion)}


def _emit(payload: Any, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def invariant_report(src, k: int, route: str) -> dict:
    rep: dict[str, Any] = {"k": k}
    if isinstance(src, SimplicialSet):
        H = cohomology(src)
        ctx = build_simplicial_context(src)
        rep.update(
            input="simplicial",
            h1_rank=H.h1_rank,
            h2=abelian_json(H.h2),
            ak=abelian_json(a_k(src, k).presentation),
            rbar2_rank=ctx.rbar2.rank,
            qbar3_rank=len(ctx.qbar3_basis),
            invariant_class=invariant_class(ctx).to_json(),
        )
        return rep
    P = src
    rep.update(input="presentation", presentation=P.to_json(), h1_rank=P.n,
               dk=abelian_json(d_k(P, k).presentation))
    if route in ("simplicial", "both"):
        rep["ak"] = abelian_json(a_k(presentation_complex(P), k).presentation)
    lcs = None
    try:
        lcs = build_p2_p3(P, require_injective=False)
    except HypothesisError as exc:
        rep["hypotheses"] = str(exc)
    if lcs is not None:
        rep["delta_bar_h2"] = {"alpha": [list(a) for a in lcs.delta.alpha], "injective": lcs.delta.injective}
        rep["p2"] = abelian_json(lcs.p2)
        rep["p3"] = abelian_json(lcs.p3)
    classes = {}
    ctx_s = ctx_g = None
    if route in ("simplicial", "both"):
        ctx_s = presentation_context(P)
        classes["simplicial"] = invariant_class(ctx_s).to_json()
        rep["rbar2_rank"] = ctx_s.rbar2.rank
        rep["qbar3_rank"] = len(ctx_s.qbar3_basis)
    if route in ("group", "both"):
        if lcs is not None and lcs.delta.injective:
            ctx_g = build_group_context(P, lcs)
            classes["group"] = invariant_class(ctx_g).to_json()
            rep["rbar2_rank"] = ctx_g.rbar2.rank
            rep["qbar3_rank"] = len(ctx_g.qbar3_basis)
        else:
            classes["group"] = None
            rep.setdefault("hypotheses", "Delta-bar injectivity not certified; group route skipped")
    rep["invariant_class"] = classes
    if ctx_s is not None and ctx_g is not None:
        rc = compare_routes(ctx_s, ctx_g)
        rep["route_agreement"] = {"agree": rc.agree, "h2_map": rc.h2_map, "detail": rc.detail}
    return rep


def cmd_invariant(args) -> int:
    rep = invariant_report(parse_source(load_json(args.input)), args.k, args.route)
    _emit(rep, args.out)
    if rep.get("route_agreement", {}).get("agree") is False:
        return EXIT_FAIL
    return EXIT_OK


def _require_presentation(src) -> GroupPresentation:
    if not isinstance(src, GroupPresentation):
        raise InputError("this command needs a group presentation")
    return src


def cmd_compare(args) -> int:
    Pa = _require_presentation(parse_source(load_json(args.a)))
    Pb = _require_presentation(parse_source(load_json(args.b)))
    maps = load_json(args.maps) if args.maps else [[[int(i == j) for j in range(Pa.n)] for i in range(Pa.n)]]
    if not isinstance(maps, list):
        raise InputError("maps file must hold a list of integer matrices")
    ca = build_group_context(Pa)
    cb = build_group_context(Pb)
    verdicts = []
    for f in maps:
        try:
            verdicts.append({"map": f, **compare_contexts(ca, cb, f).to_json()})
        except InputError as exc:
            verdicts.append({"map": f, "error": str(exc)})
    if not maps:
        summary = "no candidates"
    elif any(v.get("gamma3") is True and v.get("gamma4") is True for v in verdicts):
        summary = "some map extends to G/gamma_4"
    elif any(v.get("gamma3") is True for v in verdicts):
        summary = "some map extends to G/gamma_3 only"
    else:
        summary = "no map extends to G/gamma_3"
    _emit({"verdicts": verdicts, "summary": summary}, args.out)
    return EXIT_OK


def _parse_vectors(text: str, n: int) -> list[list[int]]:
    try:
        vecs = [[int(x) for x in part.split(",")] for part in text.split(";")]
    except ValueError as exc:
        raise InputError(f"cannot parse classes {text!r}") from exc
    if len(vecs) != 3 or any(len(v) != n for v in vecs):
        raise InputError(f"need three H^1 vectors of length {n}")
    return vecs


def cmd_massey(args) -> int:
    src = parse_source(load_json(args.input))
    ctx = presentation_context(src) if isinstance(src, GroupPresentation) else build_simplicial_context(src)
    t1, t2, t3 = _parse_vectors(args.classes, ctx.n)
    mp = triple_massey(ctx, t1, t2, t3)
    _emit({"representative": list(mp.representative),
           "indeterminacy": [list(b) for b in mp.indeterminacy.basis],
           "h2": abelian_json(ctx.h2)}, args.out)
    return EXIT_OK


def cmd_dk(args) -> int:
    P = _require_presentation(parse_source(load_json(args.input)))
    _emit({"k": args.k, "dk": abelian_json(d_k(P, args.k).presentation)}, args.out)
    return EXIT_OK


def cmd_ak(args) -> int:
    src = parse_source(load_json(args.input))
    X = presentation_complex(src) if isinstance(src, GroupPresentation) else src
    _emit({"k": args.k, "ak": abelian_json(a_k(X, args.k).presentation)}, args.out)
    return EXIT_OK


def cmd_gamma(args) -> int:
    P = _require_presentation(parse_source(load_json(args.input)))
    try:
        word = json.loads(args.word)
    except json.JSONDecodeError as exc:
        raise InputError(f"word must be a JSON list of signed integers: {exc}") from exc
    if not isinstance(word, list):
        raise InputError("word must be a JSON list of signed integers")
    _emit({"k": args.k, "word": word, "member": gamma_member(P, word, args.k)}, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# corpus verification


def verify_presentation(P: GroupPresentation, k: int, maps_per_item: int = 4) -> list[dict]:
    """Run the property suites on one presentation; return failed checks."""
    failures = []
    X = presentation_complex(P)
    for kk in range(1, k + 1):
        v = algebra_iso_check(a_k(X, kk), d_k(P, kk))
        if not v.is_isomorphism:
            failures.append({"check": f"A^({kk}) vs D^({kk})", **v.to_json()})
    for name, f in generated_maps(P, limit=maps_per_item):
        ph = pseudo_homeo_check(f)
        if not ph.is_pseudo_homeo:
            failures.append({"check": f"pseudo-homeomorphism {name}", "detail": ph.detail})
            continue
        v = induced_map_check(f, a_k(f.source, k), a_k(f.target, k))
        if not v.is_isomorphism:
            failures.append({"check": f"A^({k}) transport along {name}", **v.to_json()})
    try:
        lcs = build_p2_p3(P)
    except HypothesisError:
        return failures
    S = presentation_context(P)
    G = build_group_context(P, lcs)
    rc = compare_routes(S, G)
    if not rc.agree:
        failures.append({"check": "route agreement", "detail": rc.detail})
    I = invariant_class(S)
    for shift in range(1, 3):
        shifts = [[shift * sum(kap) for kap in zip(*S.cohom.kappa)] for _ in range(S.rbar2.rank)]
        S2 = build_simplicial_context(S.X, [f"g{i + 1}" for i in range(P.n)], nu_shift=shifts)
        if invariant_class(S2) != I:
            failures.append({"check": f"choice independence (shift {shift})"})
    return failures


def verify_simplicial(X: SimplicialSet, k: int) -> list[dict]:
    """Transport of A^(k) along the sphere collapse and filling of X."""
    failures = []
    for name, f in (("sphere-collapse", sphere_collapse(X)), ("sphere-filling", sphere_filling(X))):
        ph = pseudo_homeo_check(f)
        if not ph.is_pseudo_homeo:
            failures.append({"check": f"pseudo-homeomorphism {name}", "detail": ph.detail})
            continue
        v = induced_map_check(f, a_k(f.source, k), a_k(f.target, k))
        if not v.is_isomorphism:
            failures.append({"check": f"A^({k}) transport along {name}", **v.to_json()})
    return failures


def verify_fixture(P: GroupPresentation) -> list[dict]:
    """Perturbed tau-bar fixture: self-comparison must now fail gamma_4."""
    G = build_group_context(P)
    pc = perturbed_context(G)
    if pc is None:
        return [{"check": "perturbation", "detail": "no perturbation outside the ambiguity exists"}]
    ident = [[int(i == j) for j in range(P.n)] for i in range(P.n)]
    res = compare_contexts(G, pc[0], ident)
    if res.gamma4 is not True:
        return [{"check": "comparison with perturbed tau-bar", "gamma4": res.gamma4,
                 "certificate": res.certificates.get("dual_functional")}]
    return []


def run_verify(corpus: Path, k: int) -> tuple[dict, int]:
    files = sorted(corpus.glob("*.json"))
    results = {}
    failed = False
    if not files:
        log.warning("empty corpus at %s", corpus)
    for path in files:
        data = load_json(str(path))
        src = parse_source(data)
        if isinstance(src, SimplicialSet):
            fails = verify_simplicial(src, k)
            results[path.name] = {"ok": not fails, "failures": fails}
            if fails:
                failed = True
                results[path.name]["reproducer"] = src.to_json()
            continue
        if data.get("fixture") == "perturbed-tau-bar":
            fails = verify_fixture(src)
        else:
            fails = verify_presentation(src, k)
        results[path.name] = {"ok": not fails, "failures": fails}
        if fails:
            failed = True
            results[path.name]["reproducer"] = src.to_json()
    return {"corpus": str(corpus), "k": k, "results": results, "passed": not failed}, (EXIT_FAIL if failed else EXIT_OK)


def default_corpus() -> Path:
    return Path(str(resources.files("pseudoiso") / "corpus"))


def cmd_verify(args) -> int:
    corpus = Path(args.corpus) if args.corpus else default_corpus()
    if not corpus.is_dir():
        raise InputError(f"corpus directory {corpus} does not exist")
    report, code = run_verify(corpus, args.k)
    _emit(report, args.out)
    return code


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pseudoiso", description="Pseudo-isomorphism invariants of groups and simplicial sets")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, k=True):
        if k:
            p.add_argument("--k", type=int, default=4, help="truncation level (default 4)")
        p.add_argument("--out", help="write JSON here instead of stdout")

    p = sub.add_parser("invariant", help="full invariant report")
    p.add_argument("input")
    p.add_argument("--route", choices=["group", "simplicial", "both"], default="both")
    common(p)
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("compare", help="decide extension of H_1 maps to G/gamma_3 and G/gamma_4")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--maps", help="JSON list of integer matrices H_1(a) -> H_1(b)")
    common(p, k=False)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="run the property suites over a corpus directory")
    p.add_argument("corpus", nargs="?")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("massey", help="triple Massey product of three H^1 classes")
    p.add_argument("input")
    p.add_argument("--classes", required=True, help='three H^1 vectors, e.g. "1,0;1,0;0,1"')
    common(p, k=False)
    p.set_defaults(func=cmd_massey)

    for name, fn, helptext in (("dk", cmd_dk, "D^(k) of a presentation"), ("ak", cmd_ak, "A^(k) of a simplicial set or presentation complex")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("input")
        common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("gamma", help="lower central series membership (k <= 4)")
    p.add_argument("input")
    p.add_argument("--word", required=True, help="JSON list, e.g. [1,2,-1,-2]")
    common(p)
    p.set_defaults(func=cmd_gamma)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, PreconditionError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, None)
        return EXIT_INPUT
    except InconsistencyError as exc:
        _emit({"error": "InconsistencyError", "message": str(exc)}, None)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
