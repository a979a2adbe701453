"""Acceptance suite: one PASS/FAIL line per criterion.

Criteria whose displayed claims do not hold as printed are asserted in
full under ``xfail(strict=True)``; the facts that do hold are pinned by
the ``*_derived`` tests next to them.
"""

import json
import os
import subprocess
import sys
import time

import pytest

from artifact.bicross import universal_fibre_example, zero_fibre_example, gamma_space_dimension, z3z2, z6z6
from artifact.bundle import random_trivial_bundle_suite
from artifact.cli import cmd_hopf_suite
from artifact.discrete import builtin_covers, cycle_bundle_sweep, h1, moduli_zero_curvature, random_cover, \
    simplicial_h1
from artifact.qpoly import dimension_report, relations_report, verify_identities
from artifact.scalars import QQ, QQq


@pytest.fixture
def verdict(capsys):
    def say(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
        return ok

    return say


class Clock:
    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.s = time.perf_counter() - self.t


# ---------------------------------------------------------------- 1

def test_criterion_1_hopf_suite(verdict):
    with Clock() as c:
        rep = cmd_hopf_suite(None)
    dim = rep.data["C(Z6)>|<CZ6"]["dimension"]
    ok = rep.ok and dim == 36 and c.s < 10
    verdict(1, ok, f"{len(rep.checks)} axiom checks, C(Z6)>|<CZ6 dim {dim}, {c.s:.1f}s")
    assert ok, rep.to_text()


# ---------------------------------------------------------------- 2

def universal_fibre_claim():
    with Clock() as c:
        rep = universal_fibre_example()
    displayed_w2 = rep.data["omega_2 d:s^i = d:s^(i-1) omega_2 for all i"]
    return rep, displayed_w2, c.s


@pytest.mark.xfail(strict=True, reason="the displayed omega_2 d:s^i rule shifts the index the wrong way")
def test_criterion_2_universal_fibre(verdict):
    rep, displayed_w2, s = universal_fibre_claim()
    ok = rep.ok and displayed_w2 and s < 5
    verdict(2, ok, f"Q_P and dim {rep.data['dim ker eps / Q_P']} ok; displayed omega_2 d:s^i rule "
                   f"{'holds' if displayed_w2 else 'fails'}; {s:.1f}s")
    assert ok


def test_criterion_2_derived():
    rep, displayed_w2, s = universal_fibre_claim()
    assert rep.ok, rep.to_text()
    names = {c.name: c.passed for c in rep.checks}
    assert names["Q_P = span{d:s^2} (x) CZ2"] and names["dim ker eps / Q_P = 3"]
    for rel in ("d d:e = (d:s^2 - d:e) omega_1", "d d:s = (d:e - d:s) omega_1",
                "d g = g (omega_0 - omega_1 + omega_2)", "omega_0 g = -g omega_0", "omega_1 g = g omega_2",
                "omega_2 g = g omega_1"):
        assert names[rel]
    for i in range(3):
        assert names[f"omega_2 d:s^{i} = d:s^{(i + 1) % 3} omega_2"]
    assert displayed_w2 is False
    assert s < 5


# ---------------------------------------------------------------- 3

def zero_fibre_claim():
    with Clock() as c:
        r0 = zero_fibre_example(2, 3)
        r1 = zero_fibre_example(2, QQ.parse("1/2"))
        r2 = zero_fibre_example(QQq.q, 1 / QQq.q, QQq)
    return r0, r1, r2, c.s


@pytest.mark.xfail(strict=True, reason="the displayed omega_2 d:s^i rule shifts the index the wrong way")
def test_criterion_3_zero_fibre(verdict):
    r0, r1, r2, s = zero_fibre_claim()
    dims = [r.data["dim ker eps / Q_P"] for r in (r0, r1, r2)]
    disp = [r.data["omega_2 d:s^i = d:s^(i-1) omega_2 for all i"] for r in (r1, r2)]
    ok = all(r.ok for r in (r0, r1, r2)) and dims == [0, 2, 2] and all(disp) and s < 5
    verdict(3, ok, f"dims {dims}; displayed omega_2 d:s^i rule {'holds' if all(disp) else 'fails'}; {s:.1f}s")
    assert ok


def test_criterion_3_derived():
    r0, r1, r2, s = zero_fibre_claim()
    for r in (r0, r1, r2):
        assert r.ok, r.to_text()
    assert [r.data["dim ker eps / Q_P"] for r in (r0, r1, r2)] == [0, 2, 2]
    for r in (r1, r2):
        names = {c.name: c.passed for c in r.checks}
        assert names["d g = (1 - gamma1) g (omega_2 - omega_1)"]
        assert names["d d:e = (d:s^2 - d:e) omega_1 + gamma1 (d:s - d:e) omega_2"]
        assert r.data["omega_2 d:s^i = d:s^(i-1) omega_2 for all i"] is False
    assert s < 5


# ---------------------------------------------------------------- 4

def test_criterion_4_gamma_counts(verdict):
    with Clock() as c:
        d3, r3 = gamma_space_dimension(z3z2().mp)
        mp = z6z6(build=False)
        d6, r6 = gamma_space_dimension(mp)
    iso = r6.data["isotropy"]
    full = sorted(mp.Sigma.labels)
    small = sorted(["e", "s^2", "s^4"])
    iso_ok = sorted(iso["e"]) == full and sorted(iso["g^3"]) == full and all(
        sorted(iso[x]) == small for x in ("g", "g^2", "g^4", "g^5"))
    ok = d3 == 2 and d6 == 13 and iso_ok and r3.ok and r6.ok and c.s < 5
    verdict(4, ok, f"Z2Z3 {d3}, Z6|><|Z6 {d6}, isotropy {'as expected' if iso_ok else iso}, {c.s:.1f}s")
    assert ok


# ---------------------------------------------------------------- 5

def test_criterion_5_cech(verdict):
    with Clock() as c:
        bad = [seed for seed in range(20) if h1(random_cover(seed))[0] != simplicial_h1(random_cover(seed))]
        sizes = [random_cover(seed).n for seed in range(20)]
        named = {k: (h1(cx)[0], simplicial_h1(cx)) for k, cx in builtin_covers().items()}
    want = {"circle-3": 1, "disk-3": 0, "tetrahedron": 0}
    ok = not bad and max(sizes) <= 7 and all(named[k] == (v, v) for k, v in want.items()) and c.s < 30
    verdict(5, ok, f"20 random nerves (sizes {min(sizes)}..{max(sizes)}) agree with the oracle; "
                   f"named {dict((k, v[0]) for k, v in named.items())}; {c.s:.1f}s")
    assert ok


# ---------------------------------------------------------------- 6

def test_criterion_6_moduli(verdict):
    with Clock() as c:
        circ = {k: moduli_zero_curvature(builtin_covers()["circle-3"], k) for k in (2, 3, 4)}
        disk = moduli_zero_curvature(builtin_covers()["disk-3"], 3)
    fails = sum(r["biconditional_failures"] for r in circ.values()) + disk["biconditional_failures"]
    counts = {k: r["classes"] for k, r in circ.items()}
    ok = all(counts[k] == k for k in counts) and disk["classes"] == 1 and fails == 0 and c.s < 60
    verdict(6, ok, f"circle-3 classes {counts}, disk-3 {disk['classes']}, biconditional failures {fails}, "
                   f"{c.s:.1f}s")
    assert ok


# ---------------------------------------------------------------- 7

@pytest.fixture(scope="module")
def cycle_sweep():
    with Clock() as c:
        rep = cycle_bundle_sweep((1, 2, -1))
    return rep, c.s


CLOSED = "edge set matches the closed-form rules"
REFINED = "edge set matches the refined rules"
DISP = "displayed omega(d:g) passes both connection axioms"
NEG = "negated displayed omega(d:g) passes both connection axioms"
PIPE = "pipeline omega passes both connection axioms"


@pytest.mark.xfail(strict=True, reason="value 1 makes an extra edge; the displayed omega has the wrong sign")
def test_criterion_7_cycle_bundle(verdict, cycle_sweep):
    rep, s = cycle_sweep
    closed = {v: rep.data[f"value {v}"][CLOSED] for v in (1, 2, -1)}
    disp = {v: rep.data[f"value {v}"][DISP] for v in (1, 2, -1)}
    ok = all(x == "49/49" for x in closed.values()) and all(x == "49/49" for x in disp.values()) and s < 30
    verdict(7, ok, f"closed-form rules {closed}; displayed omega {disp}; {s:.1f}s")
    assert ok


def test_criterion_7_derived(cycle_sweep):
    rep, s = cycle_sweep
    for v in (1, 2, -1):
        row = rep.data[f"value {v}"]
        assert row[REFINED] == row[NEG] == row[PIPE] == "49/49"
        assert row[DISP] == "0/49"
    assert rep.data["value 2"][CLOSED] == rep.data["value -1"][CLOSED] == "49/49"
    assert rep.data["value 1"][CLOSED] != "49/49"
    assert s < 30


# ---------------------------------------------------------------- 8

def test_criterion_8_random_bundles(verdict):
    with Clock() as c:
        rep = random_trivial_bundle_suite(0, 12)
    names = {c_.name.split(": ", 1)[1] for c_ in rep.checks}
    need = {"chi(N) = P (x) Q", "Delta_R(N) inside N (x) H", "N0 inside N", "chi^{-1}(P (x) Q) = horizontal + N",
            "omega: chi_N o omega = 1 (x) id", "omega: Delta_R o omega = (omega (x) id) Ad"}
    ok = rep.ok and need <= names and c.s < 60
    verdict(8, ok, f"12 random trivial bundles over {rep.data['fibres drawn']}, {len(rep.checks)} checks, "
                   f"{c.s:.1f}s")
    assert ok, rep.to_text()


# ---------------------------------------------------------------- 9

@pytest.fixture(scope="module")
def qparts():
    with Clock() as c:
        ids = verify_identities(6, 2)
        dims = dimension_report(None, 6, 2)
        rel = relations_report(6, 2)
    return ids, dims, rel, c.s


@pytest.mark.xfail(strict=True, reason="four displayed relations hold only after the documented corrections")
def test_criterion_9_qmonopole(verdict, qparts):
    ids, dims, rel, s = qparts
    e_ok = rel.ok and rel.data["displayed relations all hold"]
    ok = ids.ok and dims.ok and e_ok and s < 600
    bad = sorted(k for k, v in rel.data["displayed relations"].items() if not v)
    verdict(9, ok, f"(a)-(c) {'ok' if ids.ok else 'fail'}, (d) {'ok' if dims.ok else 'fail'}, "
                   f"(e) {len(bad)} displayed relations fail; {s:.1f}s")
    assert ok


def test_criterion_9_derived(qparts):
    ids, dims, rel, s = qparts
    assert ids.ok and dims.ok and rel.ok
    d = dims.data["dimensions"]
    assert d["ker pi / Q^(1,1)"] == {"6": 4, "8": 4}
    assert d["ker pi / Q^(1,2)"] == {"6": 8, "8": 8}
    assert d["ker pi / Q^(2,2)"] == {"6": 12, "8": 12}
    assert d["ker eps / Q_P^(1,1)"] == {"6": 5, "8": 5}
    assert d["ker eps / Q_P^(1,1;0,0)"] == {"6": 3, "8": 3}
    assert {c.name: c.passed for c in rel.checks}["omega_D([Z-1]) = (1+q^-2) w1"]
    assert s < 600


# ---------------------------------------------------------------- 10

INVOCATIONS = [
    ["hopf", "suite"],
    ["bicross", "example", "z3z2", "--universal-fibre"],
    ["bicross", "example", "z3z2", "--gamma1", "2", "--gamma2", "3"],
    ["bicross", "example", "z3z2", "--gamma1", "2", "--gamma2", "1/2"],
    ["bicross", "example", "z3z2", "--gamma1", "q", "--gamma2", "1/q"],
    ["bicross", "gamma-dim", "z3z2"],
    ["bicross", "gamma-dim", "z6z6"],
    ["cohomology", "random", "--seed", "0", "--count", "20"],
    ["cohomology", "nerve", "circle-3"],
    ["cohomology", "moduli", "circle-3", "--k", "2", "3", "4"],
    ["cohomology", "moduli", "disk-3", "--k", "3"],
    ["bundle", "cycle-sweep"],
    ["bundle", "random", "--seed", "0", "--count", "12"],
    ["qmonopole", "verify-identities", "--seed", "0"],
    ["qmonopole", "dims"],
    ["qmonopole", "relations"],
]


def _run_cli(argv, out, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    proc = subprocess.run([sys.executable, "-m", "artifact", *argv, "--out", str(out)],
                          capture_output=True, text=True, env=env, timeout=600)
    return proc.returncode, out.read_bytes() if out.exists() else b""


def test_criterion_10_determinism(verdict, tmp_path):
    diffs, codes = [], {}
    with Clock() as c:
        for k, argv in enumerate(INVOCATIONS):
            a = _run_cli(argv, tmp_path / f"{k}a.json", 0)
            b = _run_cli(argv, tmp_path / f"{k}b.json", 12345)
            codes[" ".join(argv)] = a[0]
            if a != b or not a[1]:
                diffs.append(" ".join(argv))
            json.loads(a[1])
    ok = not diffs
    verdict(10, ok, f"{len(INVOCATIONS)} invocations byte-identical across hash seeds"
                    + (f"; differing: {diffs}" if diffs else "") + f"; {c.s:.1f}s")
    assert ok
    # exit codes follow the report verdicts
    assert codes["bundle cycle-sweep"] == 1
    assert all(v == 0 for k, v in codes.items() if k != "bundle cycle-sweep")
