"""wickgit command line: every analysis as a verb writing one JSON report to stdout.

Exit codes: 0 ok, 2 domain or input error, 3 undecided verdict.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from . import orbits as ob
from .errors import SchemaError, UndecidedError, WickgitError
from .geometry import (
    CoordMetric,
    FrameMetric,
    WalkerSpec,
    coord_curvature,
    curvature_span_dim,
    einstein_constant,
    g2_metric,
    g2_sample_points,
    lie_group_curvature,
    metric_from_json,
    walker_classify,
    walker_curvature,
)
from .numkernel import form_signature
from .realforms import (
    CompatibleTriple,
    RealForm,
    check_compatible_triple,
    intersect_cartan_parts,
    killing_form,
    parse_form_name,
    real_form_from_json,
)
from .rootsys import boost_generators, bw_decompose, restricted_roots, sg_property

SCHEMA = "wickgit-report/1"
EXIT_OK, EXIT_ERROR, EXIT_UNDECIDED = 0, 2, 3


class InputError(WickgitError):
    code = "input"


class MalformedJSON(WickgitError):
    code = "malformed_json"


# ---------------------------------------------------------------- input helpers

def _data_path(name: str):
    base = resources.files("wickgit") / "data"
    cand = base / Path(name).name
    return cand if cand.is_file() else None


def load_json(arg: str):
    """Inline JSON, a file path, or the basename of a shipped example."""
    text = arg.strip()
    origin = "<inline>"
    if not text.startswith(("{", "[")):
        p = Path(arg)
        if p.is_file():
            text, origin = p.read_text(encoding="utf-8"), str(p)
        else:
            d = _data_path(arg)
            if d is None:
                raise InputError(f"no such input file: {arg}", path=arg)
            text, origin = d.read_text(encoding="utf-8"), f"wickgit/data/{Path(arg).name}"
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedJSON(f"{origin}: line {exc.lineno}, column {exc.colno}: {exc.msg}",
                            line=exc.lineno, column=exc.colno, source=origin) from exc


def _array(doc, key):
    obj = doc.get(key, doc) if isinstance(doc, dict) else doc
    if isinstance(obj, dict):
        raise SchemaError(f"expected field {key!r} holding a numeric array", field=key)
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"field {key!r} is not a numeric array") from exc
    return arr


def _form(args) -> RealForm:
    if getattr(args, "form_file", None):
        return real_form_from_json(load_json(args.form_file))
    if not getattr(args, "form", None):
        raise InputError("give --form (e.g. o31) or --form-file")
    return parse_form_name(args.form)


def _triple(args) -> CompatibleTriple:
    if args.input:
        doc = load_json(args.input)
        for key in ("f1", "f2", "compact"):
            if key not in doc:
                raise SchemaError(f"triple document missing {key!r}", field=key)
        return CompatibleTriple(*(real_form_from_json(doc[k]) for k in ("f1", "f2", "compact")))
    if not args.forms or len(args.forms) != 2:
        raise InputError("give --forms F1 F2 or --input triple.json")
    f1, f2 = (parse_form_name(f) for f in args.forms)
    if not isinstance(f1, RealForm) or not isinstance(f2, RealForm) or f1.n != f2.n:
        raise InputError("both forms must be o(p,q) with the same n")
    comp = parse_form_name(args.compact) if args.compact else parse_form_name(f"o{f1.n}")
    return CompatibleTriple(f1, f2, comp)


def _rep(args, algebra) -> ob.RepAction:
    kind = args.rep
    if kind == "adjoint":
        return ob.RepAction.adjoint_of(algebra)
    if kind.startswith("tensor"):
        try:
            d = int(kind.split(":")[1])
        except (IndexError, ValueError) as exc:
            raise InputError("tensor representation must be written tensor:VALENCE") from exc
        return ob.RepAction.tensors(algebra, d)
    raise InputError(f"unknown representation {kind!r}")


def _algebra_of(form):
    return form.real_algebra() if isinstance(form, RealForm) else form


def _flow_config(args) -> ob.FlowConfig:
    return ob.FlowConfig(max_iter=args.max_iter, seed=args.seed)


# ---------------------------------------------------------------- verbs

def cmd_lie_info(args):
    f = _form(args)
    alg = _algebra_of(f)
    out = {"name": alg.name, "n": alg.n, "dim": alg.dim, "dim_t": len(alg.t_mats), "dim_p": len(alg.p_mats)}
    K = killing_form(alg)
    try:
        out["killing_signature"] = list(form_signature(K))
        out["semisimple"] = True
    except WickgitError:
        out["killing_signature"] = None
        out["semisimple"] = False
    if isinstance(f, RealForm):
        out["signature"] = list(f.signature)
        out["real_rank"] = min(f.signature)
    return "ok", out


def cmd_triple_check(args):
    t = _triple(args)
    rep = check_compatible_triple(t)
    out = rep.to_json()
    out["cartan_intersections"] = list(intersect_cartan_parts(t))
    return "ok", out


def cmd_roots(args):
    f = _form(args)
    return "ok", restricted_roots(f).to_json()


def cmd_bw(args):
    f = _form(args)
    T = _array(load_json(args.tensor), "tensor")
    rs = restricted_roots(f)
    x = boost_generators(rs, args.normalization)
    dec = bw_decompose(T, x)
    return "ok", {"normalization": args.normalization, "support": sorted([list(b) for b in dec.support]),
                  "k": dec.k}


def cmd_sg(args):
    doc = load_json(args.support)
    supp = doc.get("support") if isinstance(doc, dict) else doc
    if not isinstance(supp, list) or not supp:
        raise SchemaError("support must be a nonempty list of integer weight vectors")
    res = sg_property([tuple(b) for b in supp], args.method)
    return "ok", {**res.to_json(), "strict_count": res.strict_count}


def cmd_orbit(args):
    f = _form(args)
    r = _rep(args, _algebra_of(f))
    v = _array(load_json(args.vector), "vector")
    rep = ob.kempf_ness_flow(v, r, _flow_config(args))
    status = "undecided" if rep.verdict == "undecided" else "ok"
    return status, rep.to_json()


def cmd_lorentz_canon(args):
    x = _array(load_json(args.vector), "vector")
    return "ok", ob.lorentz_canonical_form(x).to_json()


def _metric(args):
    return metric_from_json(load_json(args.metric))


def cmd_walker(args):
    w = _metric(args)
    if not isinstance(w, WalkerSpec):
        raise SchemaError("walker verb needs a metric of kind 'walker'")
    if args.generic:
        w = WalkerSpec(w.A, w.B, w.C, None, w.name)
    cls = walker_classify(w, run_flow=not args.no_flow, flow_config=_flow_config(args), seed=args.seed)
    return "ok", cls.to_json()


def _point(args, dim):
    if args.point is None:
        raise InputError(f"this metric needs --point with {dim} coordinates")
    pt = [float(x) for x in args.point.split(",")]
    if len(pt) != dim:
        raise InputError(f"--point needs {dim} comma-separated coordinates")
    return pt


def cmd_curvature(args):
    m = _metric(args)
    if isinstance(m, FrameMetric):
        cd = lie_group_curvature(m)
        lam = einstein_constant(m, cd)
        out = {"frame_tag": cd.frame_tag, "scalar": str(cd.scalar),
               "ricci": [[str(x) for x in row] for row in cd.ricci],
               "einstein_constant": None if lam is None else str(lam),
               "signature": list(m.signature())}
        return "ok", out
    if isinstance(m, WalkerSpec):
        cd = walker_curvature(m)
        out = cd.to_json()
        if args.point is not None:
            num = cd.evaluate(dict(zip(("u", "v", "U", "V"), _point(args, 4))))
            out["at_point"] = num.to_json()
        return "ok", out
    assert isinstance(m, CoordMetric)
    cd = coord_curvature(m, _point(args, m.dim))
    out = cd.to_json()
    out["span_dim"] = curvature_span_dim(cd)
    out["symmetries_ok"] = cd.symmetries_ok()
    return "ok", out


def cmd_g2(args):
    m = g2_metric(args.wick)
    rng = np.random.default_rng(args.seed)
    rows = []
    for x in g2_sample_points(args.points, rng):
        cd = coord_curvature(m, x)
        rows.append({"point": [round(float(c), 12) for c in x], "max_abs_ricci": cd.max_abs_ricci(),
                     "signature": list(form_signature(m(x)))})
    x0 = np.array([2.0, 0.1, 0.2, 0.3, -0.1, 0.25, 0.4])
    span = curvature_span_dim(coord_curvature(m, x0))
    return "ok", {"wick": args.wick, "samples": rows, "max_abs_ricci": max(r["max_abs_ricci"] for r in rows),
                  "span_dim_r2": span}


def cmd_hermitian_check(args):
    t = _triple(args)
    return "ok", ob.check_compatible_hermitian(t, args.valence).to_json()


def cmd_suite(args):
    from .suites import SUITES

    if args.name not in SUITES:
        raise InputError(f"unknown suite {args.name!r}; known: {sorted(SUITES)}", suite=args.name)
    items = sorted(SUITES[args.name](seed=args.seed), key=lambda it: it.id)
    passed = sum(it.passed for it in items)
    payload = {"suite": args.name, "passed": passed, "total": len(items),
               "items": [it.to_json() for it in items]}
    return ("ok" if passed == len(items) else "error"), payload


# ---------------------------------------------------------------- parser and dispatch

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wickgit", description="Real forms, orbit closures and curvature checks.")
    p.add_argument("--version", action="version", version=f"wickgit {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--max-iter", type=int, default=100_000)
        return sp

    def form_opts(sp):
        sp.add_argument("--form", help="shorthand such as o31, o22, o4 or sl2")
        sp.add_argument("--form-file", help="real form JSON (n, p, q, embedding)")

    def triple_opts(sp):
        sp.add_argument("--forms", nargs=2, metavar=("F1", "F2"))
        sp.add_argument("--compact")
        sp.add_argument("--input", help="triple JSON with f1, f2, compact")

    form_opts(add("lie-info", cmd_lie_info, "dimensions and Killing signature"))
    triple_opts(add("triple-check", cmd_triple_check, "commuting conjugations of a triple"))
    form_opts(add("roots", cmd_roots, "restricted root system"))
    sp = add("bw", cmd_bw, "boost-weight support of a covariant tensor")
    form_opts(sp)
    sp.add_argument("--tensor", required=True)
    sp.add_argument("--normalization", choices=("orthogonal", "simple-dual"), default="orthogonal")
    sp = add("sg", cmd_sg, "S^G direction for a weight support")
    sp.add_argument("--support", required=True)
    sp.add_argument("--method", choices=("auto", "exact", "lp"), default="auto")
    sp = add("orbit", cmd_orbit, "orbit-closure verdict from the norm-minimizing flow")
    form_opts(sp)
    sp.add_argument("--rep", default="adjoint", help="adjoint or tensor:VALENCE")
    sp.add_argument("--vector", required=True)
    sp = add("lorentz-canon", cmd_lorentz_canon, "canonical form of a minimal vector of o(n-1,1)")
    sp.add_argument("--vector", required=True)
    sp = add("walker", cmd_walker, "W1-W4 type of a Walker metric")
    sp.add_argument("--metric", required=True)
    sp.add_argument("--generic", action="store_true", help="ignore the stored point, use polynomial support")
    sp.add_argument("--no-flow", action="store_true")
    sp = add("curvature", cmd_curvature, "curvature of a metric document")
    sp.add_argument("--metric", required=True)
    sp.add_argument("--point", help="comma-separated coordinates")
    sp = add("g2", cmd_g2, "Ricci norms, signatures and curvature span of the G2 metrics")
    sp.add_argument("--wick", action="store_true")
    sp.add_argument("--points", type=int, default=10)
    sp = add("hermitian-check", cmd_hermitian_check, "compatible Hermitian product on tensor powers")
    triple_opts(sp)
    sp.add_argument("--valence", type=int, default=1)
    sp = add("suite", cmd_suite, "run a named check suite")
    sp.add_argument("name")
    return p


def _clean(obj):
    """JSON-safe: numpy scalars to Python, non-finite floats to strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if np.isfinite(f) else str(f)
    return obj


def dispatch(args) -> tuple[dict, int]:
    try:
        status, payload = args.func(args)
        code = {"ok": EXIT_OK, "undecided": EXIT_UNDECIDED}.get(status, EXIT_ERROR)
    except UndecidedError as exc:
        status, payload, code = "undecided", {"error": {"code": exc.code, "message": exc.message}}, EXIT_UNDECIDED
    except WickgitError as exc:
        status, code = "error", EXIT_ERROR
        payload = {"error": {"code": exc.code, "message": exc.message, "detail": exc.detail}}
    except (ValueError, KeyError) as exc:
        status, code = "error", EXIT_ERROR
        payload = {"error": {"code": "domain", "message": str(exc)}}
    report = {"verb": args.verb, "status": status, "payload": payload,
              "versions": {"tool": __version__, "schema": SCHEMA}, "seed": args.seed}
    return _clean(report), code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report, code = dispatch(args)
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
