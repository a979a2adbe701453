"""Command-line front end.

Every subcommand builds a :class:`~artifact.report.Report`, prints it as
text (or JSON with ``--json``) and optionally writes the JSON form to
``--out``.  The exit status is 0 when every check passes, 1 when some
check fails and 2 for input errors.

Files are written atomically: a temporary file is created in
``$ARTIFACT_SCRATCH`` (default: the target directory) and renamed over
the destination.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import shutil
import sys
import tempfile
from pathlib import Path

from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
SCRATCH_ENV = "ARTIFACT_SCRATCH"


class InputError(ValueError):
    """Bad file, bad JSON or a parameter that does not fit the command."""


# ------------------------------------------------------------------ inputs

def _field(name: str):
    from .scalars import QQ, QQq, Cyclotomic

    key = name.replace(" ", "")
    if key in ("Q", "QQ"):
        return QQ
    if key in ("Q(q)", "QQq"):
        return QQq
    m = re.fullmatch(r"(?:Q\(zeta_?(\d+)\)|cyclotomic:(\d+))", key)
    if m:
        return Cyclotomic(int(m.group(1) or m.group(2)))
    raise InputError(f"unknown field {name!r} (use Q, Q(q) or Q(zeta_N))")


def _load_json(src: str):
    """A JSON literal or a path to a JSON file."""
    text = src.strip()
    if text[:1] in "[{":
        where = "<argument>"
    else:
        p = Path(src)
        if not p.is_file():
            raise InputError(f"no such file: {src}")
        text, where = p.read_text(), src
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def builtin_groups() -> dict:
    from .hopf import Group

    out = {f"Z{n}": (lambda n=n: Group.cyclic(n)) for n in range(1, 13)}
    out["S3"] = Group.symmetric3
    out["S3xS3"] = lambda: Group.direct_product(Group.symmetric3(), Group.symmetric3(), "S3xS3")
    return out


def builtin_pairs() -> dict:
    from .bicross import z3z2, z6z6

    return {"z3z2": lambda: z3z2().mp, "z6z6": lambda: z6z6(build=False)}


_FAMILIES = [((1, 1), False), ((1, 2), False), ((2, 2), False), ((3, 2), False), ((2, 2, 1, 1), False),
             ((1, 1), True), ((1, 1, 0, 0), True), ((1, 2), True), ((2, 2, 1, 1), True)]


def builtin_families() -> dict:
    """suq2-Q-k-l[-r-s] (inside ker pi) and suq2-QP-k-l[-r-s] (inside ker eps)."""
    return {f"suq2-{'QP' if total else 'Q'}-" + "-".join(map(str, fam)): (fam, total) for fam, total in _FAMILIES}


def _family(text: str):
    """A catalog name, or k,l[,r,s] with an optional QP: prefix."""
    from .qpoly import QPolyError, parse_family

    fams = builtin_families()
    if text in fams:
        return fams[text]
    total = text.startswith("QP:")
    body = text[3:] if total else text
    if re.fullmatch(r"suq2-QP?(-\d+)+", text):
        total = text.startswith("suq2-QP")
        body = ",".join(text.split("-")[2:])
    try:
        return parse_family(body), total
    except (QPolyError, ValueError) as exc:
        raise InputError(f"family {text!r}: {exc}") from exc


def _group(src: str):
    from .hopf import Group, HopfError

    groups = builtin_groups()
    if src in groups:
        return groups[src]()
    data = _load_json(src)
    try:
        return Group.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{src}: group JSON needs 'elements', 'table' and 'identity' ({exc})") from exc
    except HopfError as exc:
        raise InputError(f"{src}: {exc}") from exc


def _pair(src: str):
    from .bicross import BicrossError, MatchedPair

    pairs = builtin_pairs()
    if src in pairs:
        return pairs[src]()
    data = _load_json(src)
    try:
        return MatchedPair.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{src}: matched-pair JSON needs 'G', 'Sigma', 'tri' and 'tle' ({exc})") from exc
    except BicrossError as exc:
        raise InputError(f"{src}: {exc}") from exc


def _hopf(G, kind: str, K):
    from .hopf import function_algebra, group_algebra

    return function_algebra(G, K) if kind == "function" else group_algebra(G, K)


def _vectors(data, labels, K, what: str) -> list:
    from .hopf import HopfError, vec_from_json

    if isinstance(data, dict):
        data = data.get("generators", data.get(what, []))
    if not isinstance(data, list):
        raise InputError(f"{what}: expected a list of {{label: scalar}} objects")
    out = []
    for k, obj in enumerate(data):
        try:
            out.append(vec_from_json(obj, labels, K))
        except (HopfError, ValueError) as exc:
            raise InputError(f"{what}[{k}]: {exc}") from exc
    return out


# ----------------------------------------------------------------- output

def write_atomic(path: str, text: str) -> None:
    dest = Path(path)
    dest.parent.mkdir(parents=True, exist_ok=True)
    scratch = os.environ.get(SCRATCH_ENV) or str(dest.parent)
    fd, tmp = tempfile.mkstemp(prefix=".artifact-", suffix=".tmp", dir=scratch)
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    try:
        os.replace(tmp, dest)
    except OSError:
        shutil.move(tmp, dest)


def emit(rep: Report, args) -> int:
    text = rep.to_json() if getattr(args, "json", False) else rep.to_text()
    print(text)
    if getattr(args, "out", None):
        write_atomic(args.out, rep.to_json() + "\n")
    return EXIT_OK if rep.ok else EXIT_FAIL


# --------------------------------------------------------------- commands

def cmd_list_builtins(args) -> Report:
    from .discrete import builtin_covers

    rep = Report("built-in catalog")
    rep.data["groups"] = list(builtin_groups())
    rep.data["matched pairs"] = list(builtin_pairs())
    rep.data["covers"] = list(builtin_covers())
    rep.data["ideal families"] = list(builtin_families())
    rep.data["bundle fibres"] = ["C(Z2)", "C(Z3)", "CZ3"]
    return rep


def cmd_hopf_check(args) -> Report:
    from .bicross import bicrossproduct
    from .hopf import check_hopf_axioms

    K = _field(args.field)
    if args.source in builtin_pairs():
        bx = bicrossproduct(_pair(args.source), K)
        rep = check_hopf_axioms(bx.P)
        rep.data["dimension"] = bx.P.n
        return rep
    G = _group(args.source)
    kinds = ["function", "group"] if args.kind == "both" else [args.kind]
    rep = Report(f"Hopf axioms for {G.name} (order {G.n})")
    for kind in kinds:
        H = _hopf(G, kind, K)
        rep.extend(check_hopf_axioms(H), f"{H.name}: ")
        rep.data[H.name] = {"dimension": H.n}
    if args.dump:
        rep.data["hopf"] = {H.name: H.to_json() for H in (_hopf(G, k, K) for k in kinds)}
    return rep


def cmd_hopf_suite(args) -> Report:
    from .bicross import z3z2, z6z6
    from .hopf import check_hopf_axioms, function_algebra, group_algebra

    rep = Report("Hopf axiom suite")
    groups = builtin_groups()
    for name in ("Z2", "Z3", "Z6", "S3"):
        G = groups[name]()
        for H in (function_algebra(G), group_algebra(G)):
            rep.extend(check_hopf_axioms(H), f"{H.name}: ")
    for bx in (z3z2(), z6z6()):
        rep.extend(check_hopf_axioms(bx.P), f"{bx.P.name}: ")
        rep.data[bx.P.name] = {"dimension": bx.P.n}
    rep.add("C(Z6)>|<CZ6 is 36-dimensional", z6z6().P.n == 36)
    return rep


def cmd_calculus_ideal(args) -> Report:
    from .calculus import CalculusError, LeftCovariantCalculus, bicovariance_check, ideal_from_submodule, \
        maurer_cartan
    from .bundle import right_ideal
    from .linalg import Subspace

    K = _field(args.field)
    G = _group(args.source)
    H = _hopf(G, args.kind, K)
    gens = _vectors(_load_json(args.gens), H.labels, K, "generators") if args.gens else []
    Q = right_ideal(H, gens)
    rep = Report(f"left-covariant calculus on {H.name}")
    rep.data["dim Q (right ideal generated)"] = Q.dim
    try:
        C = LeftCovariantCalculus(H, Q)
    except CalculusError as exc:
        rep.add("Q is a right ideal inside ker eps", False, str(exc))
        return rep
    rep.extend(C.check())
    rep.add("ideal read back from N equals Q", ideal_from_submodule(H, C.N) == Q)
    bic = bicovariance_check(H, Q)
    rep.data.update({"dim N": C.N.dim, "dim Omega^1": C.dim, "dim ker eps/Q": C.forms_dim,
                     "invariant forms": C.form_labels, "bicovariant": bic})
    if bic:
        try:
            _, omega = maurer_cartan(H, Q)
            rep.add("Maurer-Cartan form well defined with chi_N o omega = 1 (x) id", True)
            rep.data["Maurer-Cartan rank"] = Subspace.span(K, C.dim, omega.cols).dim
        except CalculusError as exc:
            rep.add("Maurer-Cartan form well defined with chi_N o omega = 1 (x) id", False, str(exc))
    return rep


def _bundle_from_spec(spec: dict, nhor_mode: str | None, nhor_file: str | None) -> Report:
    from .bundle import BundleError, _fibre, build_calculus, connection_from_beta_universal, right_ideal, \
        trivial_bundle, verify_universal_bundle
    from .discrete import set_algebra
    from .linalg import LinMap, Subspace, _iadd, tensor_vec
    from .scalars import parse_scalar

    K = _field(spec.get("field", "Q"))
    one = K.one
    base = spec.get("base", 2)
    labels = [f"x{i}" for i in range(base)] if isinstance(base, int) else [str(b) for b in base]
    m = len(labels)
    fibre = spec.get("fibre", "C(Z2)")
    try:
        if isinstance(fibre, str):
            H = _fibre(fibre, K)
        else:
            H = _hopf(_group(json.dumps(fibre["group"]) if isinstance(fibre["group"], dict)
                             else fibre["group"]), fibre.get("kind", "function"), K)
    except (BundleError, KeyError) as exc:
        raise InputError(f"fibre: {exc}") from exc
    M = set_algebra(labels, K)
    h = H.n
    Q = right_ideal(H, _vectors(spec.get("ideal", []), H.labels, K, "ideal"))
    CA, Phi, Phi_inv, Msub = trivial_bundle(M, H)
    B = verify_universal_bundle(CA, Msub)
    n = B.n
    bidx = {lab: i for i, lab in enumerate(labels)}
    cols = [dict() for _ in range(h)]
    for hl, entries in spec.get("beta", {}).items():
        if hl not in H.labels:
            raise InputError(f"beta: unknown fibre basis label {hl!r}")
        col = cols[H.labels.index(hl)]
        for k, (i, j, c) in enumerate(entries):
            i, j = (bidx[str(i)] if str(i) in bidx else int(i)), (bidx[str(j)] if str(j) in bidx else int(j))
            if i == j:
                raise InputError(f"beta[{hl!r}][{k}]: entries must be off-diagonal")
            ei, ej = tensor_vec({i: one}, H.unit, h), tensor_vec({j: one}, H.unit, h)
            for x, cx in ei.items():
                for y, cy in ej.items():
                    _iadd(col, {x * n + y: cx * cy}, parse_scalar(str(c), K))
    beta = LinMap(K, h, n * n, cols)
    mode = nhor_mode or spec.get("nhor", "maximal")
    rep = Report(f"trivial bundle C(Sigma) (x) {H.name}, |Sigma| = {m}")
    rep.data.update({"dim P": n, "dim Q": Q.dim, "N_hor": mode})
    try:
        conn = connection_from_beta_universal(B, Phi, beta, Phi_inv)
        rep.extend(conn.report, "omega_U: ")
        if mode == "file":
            if not nhor_file:
                raise InputError("--nhor file needs --nhor-file")
            rows = _vectors(_load_json(nhor_file), B.U.labels, K, "N_hor")
            nhor = B.U.closure(rows)
        else:
            nhor = mode
        bc = build_calculus(B, Q, conn, nhor)
    except BundleError as exc:
        rep.add("pipeline completes", False, str(exc))
        return rep
    rep.extend(bc.report)
    rep.data.update(bc.report.data)
    return rep


def cmd_bundle_run(args) -> Report:
    spec = _load_json(args.spec)
    if not isinstance(spec, dict):
        raise InputError(f"{args.spec}: bundle spec must be a JSON object")
    return _bundle_from_spec(spec, args.nhor, args.nhor_file)


def cmd_bundle_random(args) -> Report:
    from .bundle import random_trivial_bundle_suite

    return random_trivial_bundle_suite(args.seed, args.count)


def cmd_bundle_cycle_sweep(args) -> Report:
    from .discrete import cycle_bundle_sweep

    return cycle_bundle_sweep(tuple(args.values))


def _cover(src: str):
    from .discrete import DiscreteError, builtin_covers, cover_from_json

    covers = builtin_covers()
    if src in covers:
        return covers[src]
    try:
        return cover_from_json(_load_json(src))
    except (KeyError, TypeError, DiscreteError) as exc:
        raise InputError(f"{src}: {exc}") from exc


def cmd_cohomology_nerve(args) -> Report:
    from .discrete import h1, simplicial_h1

    cx = _cover(args.source)
    dim, reps = h1(cx)
    rep = Report(f"H^1 of the nerve {args.source}")
    rep.data.update({"sets": len(cx.vertices), "edges": len(cx.E), "F": len(cx.F), "H^1": dim,
                     "representatives": [{f"{cx.vertices[i]}-{cx.vertices[j]}": str(c) for (i, j), c in r.items()}
                                         for r in reps]})
    rep.add("H^1 agrees with the simplicial oracle", dim == simplicial_h1(cx), simplicial_h1(cx))
    return rep


def cmd_cohomology_moduli(args) -> Report:
    from .discrete import DiscreteError, h1, moduli_zero_curvature

    cx = _cover(args.source)
    rep = Report(f"zero-curvature moduli on {args.source}")
    b1, _ = h1(cx)
    rep.data["H^1"] = b1
    for k in args.k:
        try:
            res = moduli_zero_curvature(cx, k)
        except DiscreteError as exc:
            raise InputError(str(exc)) from exc
        rep.data[f"mu_{k}"] = {key: v for key, v in res.items() if key != "k"}
        rep.add(f"mu_{k}: F(beta) = 0 iff 1 + beta is a cocycle", res["biconditional_failures"] == 0,
                res["biconditional_failures"])
    return rep


def cmd_cohomology_random(args) -> Report:
    from .discrete import h1, random_cover, simplicial_h1

    rep = Report(f"H^1 against the simplicial oracle on {args.count} random nerves (seed {args.seed})")
    rows = []
    bad = None
    for i in range(args.count):
        cx = random_cover(args.seed * 1000 + i, args.max_sets)
        a, b = h1(cx)[0], simplicial_h1(cx)
        rows.append([len(cx.vertices), len(cx.E) // 2, len(cx.F) // 6, a])
        if a != b and bad is None:
            bad = {"case": i, "h1": a, "oracle": b, "complex": cx.to_json()}
    rep.data["cases [sets, overlaps, triple overlaps, H^1]"] = rows
    rep.add("h1 equals the oracle on every complex", bad is None, bad)
    return rep


def cmd_bicross_build(args) -> Report:
    from .bicross import BicrossError, bicrossproduct
    from .hopf import check_hopf_axioms

    K = _field(args.field)
    mp = _pair(args.source)
    try:
        bx = bicrossproduct(mp, K)
    except BicrossError as exc:
        raise InputError(str(exc)) from exc
    rep = Report(f"bicrossproduct {bx.P.name}")
    rep.extend(bx.report)
    rep.extend(check_hopf_axioms(bx.P), "Hopf axioms: ")
    rep.data.update({"dimension": bx.P.n, "matched pair": mp.to_json()})
    return rep


def cmd_bicross_gamma_dim(args) -> Report:
    from .bicross import gamma_space_dimension

    _, rep = gamma_space_dimension(_pair(args.source))
    return rep


def cmd_bicross_calculus(args) -> Report:
    from .bicross import BicrossError, GammaData, bicross_calculus, bicrossproduct
    from .bundle import BundleError, right_ideal
    from .linalg import Subspace

    K = _field(args.field)
    mp = _pair(args.source)
    bx = bicrossproduct(mp, K)
    try:
        gd = GammaData.from_json(mp, _load_json(args.gamma), K) if args.gamma else GammaData(mp, {}, K)
    except (KeyError, ValueError) as exc:
        raise InputError(f"gamma: {exc}") from exc
    gens = _vectors(_load_json(args.ideal), bx.H.labels, K, "ideal") if args.ideal else []
    Q = right_ideal(bx.H, gens) if gens else Subspace.zero(K, bx.H.n)
    try:
        bcx = bicross_calculus(bx, gd, Q, args.kill)
    except (BicrossError, BundleError) as exc:
        rep = Report(f"bicrossproduct calculus on {bx.P.name}")
        rep.add("pipeline completes", False, str(exc))
        return rep
    return bcx.report


def _gamma_value(text: str, K):
    from .scalars import parse_scalar

    try:
        return parse_scalar(text, K)
    except ValueError as exc:
        raise InputError(f"gamma value {text!r}: {exc}") from exc


def cmd_bicross_example(args) -> Report:
    from .bicross import universal_fibre_example, zero_fibre_example, gamma_space_dimension, z6z6
    from .hopf import check_hopf_axioms

    if args.name == "z6z6":
        mp = z6z6(build=False)
        _, grep = gamma_space_dimension(mp)
        bx = z6z6()
        rep = Report("Z6 |><| Z6 inside S3 x S3")
        rep.extend(bx.report)
        rep.extend(check_hopf_axioms(bx.P), "Hopf axioms: ")
        rep.extend(grep, "gamma space: ")
        rep.data.update({"dimension": bx.P.n, "gamma space": grep.data})
        return rep
    field = args.field
    if field == "auto":
        field = "Q(q)" if re.search(r"q", f"{args.gamma1}{args.gamma2}") else "Q"
    K = _field(field)
    g1, g2 = _gamma_value(args.gamma1, K), _gamma_value(args.gamma2, K)
    rep = universal_fibre_example(g1, g2, K) if args.universal_fibre else zero_fibre_example(g1, g2, K)
    rep.data["field"] = field
    return rep


def cmd_q_identities(args) -> Report:
    from .qpoly import verify_identities

    return verify_identities(args.degree, args.slack, args.seed)


def cmd_q_dims(args) -> Report:
    from .qpoly import dimension_report

    fams = [_family(f) for f in args.family] if args.family else None
    return dimension_report(fams, args.degree, args.slack)


def cmd_q_relations(args) -> Report:
    from .qpoly import relations_report

    return relations_report(args.degree, args.slack)


def cmd_q_quotient(args) -> Report:
    from .qpoly import q0_quotient_report

    return q0_quotient_report(args.degree, args.slack)


# ------------------------------------------------------------------ parser

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    p.add_argument("--out", metavar="PATH", help="also write the JSON report to PATH")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="artifact", description="Exact verification of quantum bundle constructions.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list-builtins", help="built-in groups, matched pairs, covers and ideal families")
    _common(p)
    p.set_defaults(func=cmd_list_builtins)

    hopf = sub.add_parser("hopf", help="Hopf algebras of finite groups").add_subparsers(dest="sub", required=True)
    p = hopf.add_parser("check", help="axiom check for C(G) and/or CG")
    p.add_argument("source", help="group JSON file, JSON literal or built-in name")
    p.add_argument("--kind", choices=["function", "group", "both"], default="both")
    p.add_argument("--field", default="Q")
    p.add_argument("--dump", action="store_true", help="include the structure tensors")
    _common(p)
    p.set_defaults(func=cmd_hopf_check)
    p = hopf.add_parser("suite", help="C(G), CG for Z2, Z3, Z6, S3 and both bicrossproducts")
    _common(p)
    p.set_defaults(func=cmd_hopf_suite)

    calc = sub.add_parser("calculus", help="left-covariant calculi").add_subparsers(dest="sub", required=True)
    p = calc.add_parser("ideal", help="calculus of the right ideal generated by --gens")
    p.add_argument("source", help="group JSON or built-in name")
    p.add_argument("--kind", choices=["function", "group"], default="function")
    p.add_argument("--gens", help="JSON list of {label: scalar} (file or literal)")
    p.add_argument("--field", default="Q")
    _common(p)
    p.set_defaults(func=cmd_calculus_ideal)

    bun = sub.add_parser("bundle", help="trivial bundles and the calculus construction").add_subparsers(
        dest="sub", required=True)
    p = bun.add_parser("run", help="build the calculus from a JSON bundle spec")
    p.add_argument("spec")
    p.add_argument("--nhor", choices=["maximal", "minimal", "file"])
    p.add_argument("--nhor-file", help="JSON list of {tensor label: scalar} spanning N_hor")
    _common(p)
    p.set_defaults(func=cmd_bundle_run)
    p = bun.add_parser("random", help="randomized trivial bundles")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    _common(p)
    p.set_defaults(func=cmd_bundle_random)
    p = bun.add_parser("cycle-sweep", help="C(Sigma x Z3) over a 3-cycle, single-entry beta sweep")
    p.add_argument("--values", type=int, nargs="+", default=[1, 2, -1])
    _common(p)
    p.set_defaults(func=cmd_bundle_cycle_sweep)

    coh = sub.add_parser("cohomology", help="nerves of covers, H^1 and flat moduli").add_subparsers(
        dest="sub", required=True)
    p = coh.add_parser("nerve", help="H^1 of a cover's nerve")
    p.add_argument("source", help="cover JSON or built-in name")
    _common(p)
    p.set_defaults(func=cmd_cohomology_nerve)
    p = coh.add_parser("moduli", help="gauge classes of mu_k-valued zero-curvature fields")
    p.add_argument("source")
    p.add_argument("--k", type=int, nargs="+", default=[2, 3, 4])
    _common(p)
    p.set_defaults(func=cmd_cohomology_moduli)
    p = coh.add_parser("random", help="h1 against the simplicial oracle on random nerves")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--max-sets", type=int, default=7)
    _common(p)
    p.set_defaults(func=cmd_cohomology_random)

    bic = sub.add_parser("bicross", help="bicrossproduct bundles").add_subparsers(dest="sub", required=True)
    p = bic.add_parser("build", help="bicrossproduct of a matched pair")
    p.add_argument("source", help="matched-pair JSON or z3z2 / z6z6")
    p.add_argument("--field", default="Q")
    _common(p)
    p.set_defaults(func=cmd_bicross_build)
    p = bic.add_parser("gamma-dim", help="dimension of the gamma space and isotropy groups")
    p.add_argument("source")
    _common(p)
    p.set_defaults(func=cmd_bicross_gamma_dim)
    p = bic.add_parser("calculus", help="calculus from gamma, a fibre ideal and a killed set")
    p.add_argument("source")
    p.add_argument("--gamma", help="JSON {'gamma': [[g, s, scalar], ...]}")
    p.add_argument("--ideal", help="JSON list of {label: scalar} in CG")
    p.add_argument("--kill", nargs="*", default=[], metavar="S", help="labels of Sigma to kill")
    p.add_argument("--field", default="Q")
    _common(p)
    p.set_defaults(func=cmd_bicross_calculus)
    p = bic.add_parser("example", help="worked examples on z3z2 and z6z6")
    p.add_argument("name", choices=["z3z2", "z6z6"])
    p.add_argument("--gamma1", default="2")
    p.add_argument("--gamma2", default="3")
    p.add_argument("--universal-fibre", action="store_true",
                   help="universal fibre calculus with S = {s^2} instead of the zero fibre calculus")
    p.add_argument("--field", default="auto")
    _common(p)
    p.set_defaults(func=cmd_bicross_example)

    qm = sub.add_parser("qmonopole", help="truncated checks on SU_q(2) and SO_q(3)").add_subparsers(
        dest="sub", required=True)
    for name, fn, hlp in (("verify-identities", cmd_q_identities, "normal forms, Hopf laws and ideal identities"),
                          ("dims", cmd_q_dims, "truncated quotient dimensions of the ideal families"),
                          ("relations", cmd_q_relations, "relations among the invariant forms"),
                          ("q0-quotient", cmd_q_quotient, "spanning set of ker pi / Q0")):
        p = qm.add_parser(name, help=hlp)
        p.add_argument("--degree", type=int, default=6)
        p.add_argument("--slack", type=int, default=2)
        if name == "verify-identities":
            p.add_argument("--seed", type=int, default=0)
        if name == "dims":
            p.add_argument("--family", action="append", metavar="NAME",
                           help="suq2-Q-k-l[-r-s], suq2-QP-..., k,l[,r,s] or QP:k,l[,r,s]; repeatable")
        _common(p)
        p.set_defaults(func=fn)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        rep = args.func(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return emit(rep, args)


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
