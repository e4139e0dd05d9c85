"""The ``hered`` command line."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from importlib import resources

from . import __version__
from .bardzell import check_resolution, compute_ap, realize_resolution
from .bimodule_ext import ext_report
from .linalg import Field
from .modrep import is_injective, nrf_probe, projective
from .planarity import planar_qp_check
from .preprojective import (
    QuiverWithPotential,
    compare_constructions,
    cy_check_capped,
    jacobian,
    koszul_preprojective,
    parse_qp,
    qp_from_gldim2,
    selfinjectivity_check,
)
from .quiver import (
    MonomialPresentation,
    ParseError,
    PresentationError,
    linear_truncated,
    parse_presentation,
)
from . import classify

EXAMPLES = {
    "a3j2": "a3j2.quiver",
    "star44": "star44.quiver",
    "star96": "star96.quiver",
    "a3j2-pi": "a3j2-pi.qp",
    "star44-pi": "star44-pi.qp",
    "star96-pi": "star96-pi.qp",
    "a4-nonlinear": "a4-nonlinear.quiver",
    "branch-sink": "branch-sink.quiver",
    "branch-short-out": "branch-short-out.quiver",
    "two-triangles": "two-triangles.qp",
}


class InputError(Exception):
    pass


def example_text(name: str) -> str:
    return resources.files("hered").joinpath("data", EXAMPLES[name]).read_text()


def _read(path: str) -> str:
    """File contents; a bare example name also resolves to the bundled file."""
    try:
        with open(path) as fh:
            return fh.read()
    except FileNotFoundError:
        stem = path.rsplit("/", 1)[-1].split(".")[0]
        if stem in EXAMPLES:
            return example_text(stem)
        raise InputError(f"no such file: {path}") from None
    except OSError as exc:
        raise InputError(str(exc)) from None


def _is_qp(text: str) -> bool:
    return any(line.split(None, 1)[:1] == ["term"] for line in text.splitlines())


def _presentation(args, text: str) -> MonomialPresentation:
    pres = parse_presentation(text)
    return pres.with_field(args.field) if args.field is not None else pres


def _qp(args, text: str) -> QuiverWithPotential:
    qp = parse_qp(text)
    if args.field is not None:
        qp = QuiverWithPotential(qp.quiver, qp.terms, args.field, qp.weights)
    return qp


# -- subcommands -------------------------------------------------------------------


def cmd_resolution(args, text):
    pres = _presentation(args, text)
    data = compute_ap(pres, args.max_degree)
    out = {
        "ap_sizes": data.sizes(),
        "exhausted": data.exhausted,
        "gldim": data.top_degree if data.exhausted else None,
    }
    if args.full:
        cplx = realize_resolution(data)
        out["self_test"] = check_resolution(cplx)
        q = pres.quiver
        out["differentials"] = {
            str(ell): [
                {
                    "source": q.name(data.ap[ell][i]),
                    "target": q.name(data.ap[ell - 1][e.index]),
                    "left": q.name(e.left),
                    "right": q.name(e.right),
                    "sign": e.sign,
                }
                for i, entries in enumerate(data.sub[ell])
                for e in entries
            ]
            for ell in range(1, len(data.sub))
        }
    lines = [f"AP sizes: {out['ap_sizes']}", f"gl.dim: {out['gldim'] if out['gldim'] is not None else 'not certified'}"]
    return out, lines, 0


def cmd_ext(args, text):
    pres = _presentation(args, text)
    rep = ext_report(pres, args.up_to, battery=not args.no_battery)
    lines = [f"gl.dim: {rep['gldim']}"]
    for ob in rep["battery"]:
        lines.append(f"obstruction: {ob}")
    lines.append(f"ext dims: {rep['ext_dims']}")
    lines.append(f"vanishing certified: {rep['certified_vanishing']}")
    return rep, lines, 0


def cmd_nrf(args, text):
    pres = _presentation(args, text)
    verdict = nrf_probe(pres, args.n, cap=args.cap)
    out = verdict.to_dict()
    lines = [f"verdict: {verdict.status}"]
    if "reason" in out:
        lines.append(f"reason: {out['reason']}")
    lines.append(f"total orbit dimension: {verdict.total_dimension}")
    return out, lines, 0


def _projectives_injective(alg) -> bool:
    return all(is_injective(projective(alg, v)) for v in alg.quiver.vertices)


def cmd_preprojective(args, text):
    out = {}
    if _is_qp(text):
        qp = _qp(args, text)
        route = "qp"
    else:
        pres = _presentation(args, text)
        route = "koszul" if args.koszul else "qp"
        if route == "qp":
            qp, _ = qp_from_gldim2(pres)
            out["qp"] = qp.serialize()
    lines = []
    if route == "koszul":
        kp = koszul_preprojective(pres)
        alg = kp.algebra(args.cap or 64)
        out["finite"] = alg.finite
        out["graded_dimensions"] = alg.graded_dimensions()
        out["dimension"] = sum(out["graded_dimensions"]) if alg.finite else None
        out["n"] = kp.n
        if args.check == "selfinj":
            if not alg.finite:
                raise InputError("preprojective algebra is infinite up to the cap")
            out["selfinjective"] = _projectives_injective(alg)
        if args.check == "cy":
            raise InputError("the capped CY check runs on quivers with potential; drop --koszul")
        if pres.is_quadratic:
            out["agrees_with_qp"] = compare_constructions(pres)["agree"] if kp.n == 2 else None
    else:
        jac = jacobian(qp, args.cap)
        out["finite"] = jac.finite
        out["graded_dimensions"] = jac.graded_dimensions()
        out["dimension"] = jac.dimension if jac.finite else None
        if args.check == "selfinj":
            if not jac.finite:
                raise InputError("Jacobian algebra is infinite up to the cap; try --check cy")
            out["selfinjectivity"] = selfinjectivity_check(jac).to_dict()
        elif args.check == "cy":
            out["cy"] = cy_check_capped(qp, args.cap or 8)
    lines.append(f"graded dimensions: {out['graded_dimensions']}")
    lines.append(f"dimension: {out['dimension'] if out['finite'] else 'infinite up to cap'}")
    if "selfinjectivity" in out:
        lines.append(f"selfinjective: {out['selfinjectivity']['selfinjective']}")
    if "selfinjective" in out:
        lines.append(f"selfinjective: {out['selfinjective']}")
    if "cy" in out:
        lines.append(f"CY check: {out['cy']['status']}")
    return out, lines, 0


def cmd_planar(args, text):
    if _is_qp(text):
        qp = _qp(args, text)
    else:
        qp, _ = qp_from_gldim2(_presentation(args, text))
    v = planar_qp_check(qp, args.bound)
    out = v.to_dict()
    lines = [f"verdict: {v.verdict}"] + ([f"note: {v.note}"] if v.note else [])
    if v.rotation is not None:
        for vert, order in out["rotation"].items():
            lines.append(f"  {vert}: {' '.join(order)}")
    return out, lines, 0


def _verify_truncated(args):
    rows = classify.verify_truncated_classification(range(2, args.m_max + 1), range(2, args.l_max + 1))
    lib = classify.truncated_library(args.library_vertices)
    instances = [
        {
            "m": r.m,
            "l": r.ell,
            "predicate": r.expected,
            "n": r.expected_n,
            "literal_predicate": r.literal,
            "verdict": r.verdict.to_dict(),
            "agrees": r.agrees,
        }
        for r in rows
    ]
    bad_lib = [vars(x) for x in lib if x.witness_degree is None]
    ok = all(r.agrees for r in rows) and not bad_lib
    out = {
        "theorem": "truncated",
        "instances": instances,
        "library_checked": len(lib),
        "counterexamples": [i for i in instances if not i["agrees"]] + bad_lib,
        "agreement": ok,
    }
    lines = [f"{len(rows)} truncated algebras, {sum(r.agrees for r in rows)} agree", f"{len(lib)} non-linear library algebras, {len(bad_lib)} counterexamples"]
    return out, lines, ok


def _verify_report(rep):
    out = rep.to_dict()
    out["agreement"] = rep.matches
    lines = [rep.name, f"candidates: {rep.candidates}", f"stages: {rep.stages}", f"survivors: {rep.survivors}"]
    return out, lines, rep.matches


def _verify_planar(args):
    out, lines, ok = _verify_report(classify.verify_theorem_planar_n2(args.max_total, prefilter=not args.raw))
    excl = [classify.planar_exclusion_count(r) for r in (5, 6)]
    good = all(e["ext1"] >= 1 and all(d == e["expected_dims"] for d in e["hom_dims"].values()) for e in excl)
    out["exclusion"] = excl
    out["agreement"] = ok and good
    lines.append(f"cyclic stars r = 5, 6 excluded: {good}")
    return out, lines, ok and good


def _verify_higher(args):
    reps = [classify.verify_theorem_higher(n, n + 3, args.seed) for n in range(3, args.n_max + 1)]
    out = {"reports": [r.to_dict() for r in reps], "agreement": all(r.matches for r in reps)}
    lines = []
    for r in reps:
        lines += [r.name, f"  candidates: {r.candidates}, survivors: {r.survivors}"]
    return out, lines, out["agreement"]


def _verify_star96(args):
    pres = parse_presentation(example_text("star96"))
    data = compute_ap(pres)
    rep = ext_report(pres)
    qp, _ = qp_from_gldim2(pres)
    si = selfinjectivity_check(qp)
    pl = planar_qp_check(qp)
    out = {
        "gldim": data.top_degree,
        "battery": rep["battery"],
        "selfinjective": si.selfinjective,
        "dimension": si.dimension,
        "planar": pl.verdict,
    }
    ok = data.top_degree == 2 and not rep["battery"] and si.selfinjective and not pl.is_planar_qp
    out["agreement"] = ok
    return out, [f"{k}: {v}" for k, v in out.items()], ok


def _verify_stars(args):
    res = classify.star_lemma_check(args.vertices, args.arrows)
    ok = not res["non_stars"]
    res["agreement"] = ok
    return res, [f"gl.dim 2 candidates: {res['gldim2']}", f"Ext^1 = 0: {res['ext1_zero']}", f"non-stars: {len(res['non_stars'])}"], ok


VERIFIERS = {
    "truncated": _verify_truncated,
    "planar-n2": _verify_planar,
    "higher": _verify_higher,
    "star96": _verify_star96,
    "stars": _verify_stars,
}


def cmd_verify(args, text):
    out, lines, ok = VERIFIERS[args.theorem](args)
    lines.append("agreement" if ok else "DISAGREEMENT")
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(out, fh, sort_keys=True, indent=2, default=str)
    return out, lines, 0 if ok else 1


def example_manifest() -> dict:
    return json.loads(resources.files("hered").joinpath("data", "manifest.json").read_text())


def check_example(name: str) -> dict:
    """Recompute the verdicts recorded for a bundled example."""
    text = example_text(name)
    if _is_qp(text):
        qp = parse_qp(text)
        jac = jacobian(qp)
        got = {
            "jacobian_dimension": jac.dimension if jac.finite else None,
            "selfinjective": selfinjectivity_check(jac).selfinjective if jac.finite else None,
            "planar": planar_qp_check(qp).verdict,
        }
    else:
        v = classify.pipeline(parse_presentation(text))
        got = {"n_hereditary": v.hereditary, "gldim": v.n, "stage": v.stage}
    want = example_manifest()[name]
    return {"name": name, "expected": want, "observed": got, "ok": got == want}


def cmd_examples(args, text):
    if args.check:
        names = [args.name] if args.name else sorted(EXAMPLES)
        if any(n not in EXAMPLES for n in names):
            raise InputError(f"unknown example {args.name!r}")
        rows = [check_example(n) for n in names]
        ok = all(r["ok"] for r in rows)
        lines = [f"{r['name']}: {'ok' if r['ok'] else 'MISMATCH'} {r['observed']}" for r in rows]
        return {"checks": rows, "agreement": ok}, lines, 0 if ok else 1
    if args.truncated:
        m, ell = args.truncated
        body = linear_truncated(m, ell).serialize()
        return {"name": f"A{m}/J^{ell}", "text": body}, [body.rstrip()], 0
    if args.name:
        if args.name not in EXAMPLES:
            raise InputError(f"unknown example {args.name!r}")
        body = example_text(args.name)
        return {"name": args.name, "text": body}, [body.rstrip()], 0
    return {"examples": sorted(EXAMPLES)}, sorted(EXAMPLES), 0


# -- parser ------------------------------------------------------------------------------


def _field(text: str) -> Field:
    try:
        return Field.parse(text.replace("Fp", "F"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common(top: bool) -> argparse.ArgumentParser:
    # subcommand copies must not overwrite values given before the subcommand
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--json", action="store_true", default=d(False), help="emit a JSON run report")
    c.add_argument("--field", type=_field, default=d(None), help="Q or F<p>, e.g. F7")
    c.add_argument("--seed", type=int, default=d(None), help="enumeration order seed")
    c.add_argument("--threads", type=int, default=d(1), help="accepted for compatibility; runs single-threaded")
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common(False)
    p = argparse.ArgumentParser(prog="hered", parents=[_common(True)], description="Higher hereditary monomial algebras")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", metavar="command")

    s = sub.add_parser("resolution", parents=[common], help="Bardzell AP sets and global dimension")
    s.add_argument("file")
    s.add_argument("--max-degree", type=int, default=64)
    s.add_argument("--full", action="store_true", help="include differentials and the exactness self-test")

    s = sub.add_parser("ext", parents=[common], help="bimodule Ext and the obstruction battery")
    s.add_argument("file")
    s.add_argument("--up-to", type=int, default=None)
    s.add_argument("--no-battery", action="store_true")

    s = sub.add_parser("nrf", parents=[common], help="n-representation-finiteness probe")
    s.add_argument("file")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--cap", type=int, default=None)

    s = sub.add_parser("preprojective", parents=[common], help="preprojective algebra and its checks")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--koszul", action="store_true")
    g.add_argument("--qp", action="store_true")
    s.add_argument("--check", choices=["selfinj", "cy"], default=None)
    s.add_argument("--cap", type=int, default=None)

    s = sub.add_parser("planar", parents=[common], help="planar QP test")
    s.add_argument("file")
    s.add_argument("--bound", type=int, default=200000)

    s = sub.add_parser("verify", parents=[common], help="classification checks at desk scale")
    s.add_argument("theorem", choices=sorted(VERIFIERS))
    s.add_argument("--m-max", type=int, default=10)
    s.add_argument("--l-max", type=int, default=5)
    s.add_argument("--library-vertices", type=int, default=5)
    s.add_argument("--max-total", type=int, default=8, help="bound on r + s for star systems")
    s.add_argument("--raw", action="store_true", help="do not prefilter star systems")
    s.add_argument("--n-max", type=int, default=4)
    s.add_argument("--vertices", type=int, default=5)
    s.add_argument("--arrows", type=int, default=5)
    s.add_argument("--report", default=None)

    s = sub.add_parser("examples", parents=[common], help="list or print bundled examples")
    s.add_argument("name", nargs="?")
    s.add_argument("--truncated", type=int, nargs=2, metavar=("M", "L"))
    s.add_argument("--check", action="store_true", help="recompute and compare the recorded verdicts")
    return p


COMMANDS = {
    "resolution": cmd_resolution,
    "ext": cmd_ext,
    "nrf": cmd_nrf,
    "preprojective": cmd_preprojective,
    "planar": cmd_planar,
    "verify": cmd_verify,
    "examples": cmd_examples,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not args.command:
        parser.print_usage(sys.stderr)
        return 2
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return 2
    text = None
    digest = None
    try:
        if hasattr(args, "file"):
            text = _read(args.file)
            digest = hashlib.sha256(text.encode()).hexdigest()
        results, lines, code = COMMANDS[args.command](args, text)
    except (InputError, ParseError, PresentationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        report = {
            "tool": "hered",
            "version": __version__,
            "command": args.command,
            "input_sha256": digest,
            "results": results,
        }
        print(json.dumps(report, sort_keys=True, indent=2, default=str))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
