"""Acceptance criteria 1-8, one test each; a PASS/FAIL line per criterion is
printed at the end of the session (see conftest.py)."""
from math import comb

from gmpy2 import mpq

from nodalprym.curves import blowup_node, build_family, gamma
from nodalprym.cyclo import euler_phi, root_of_unity
from nodalprym.decomp import build_ledger, rm_metadata
from nodalprym.diffs import action_images, basis_counts, eigenspace_table, prym_pair_count
from nodalprym.elim import discriminant, exact_divide
from nodalprym.mpoly import MPoly, parse_poly
from nodalprym.quotients import A_poly, genus_diagram, newton_P, twisted_Q
from nodalprym.quotients.golden import GOLDEN_NS, golden_models

RESULTS: dict = {}


def _record(k: int, title: str, failures: list):
    RESULTS[k] = (title, failures)
    print(f"criterion {k}: {'PASS' if not failures else 'FAIL'} - {title}" + (f" ({'; '.join(failures)})" if failures else ""))
    assert not failures, failures


def test_criterion_1_f0_identity():
    t = MPoly.var("t")
    a = MPoly.var("a2")
    A = A_poly(5)
    assert A == 5 * (1 - t) - 2 + a * (t * t - 2 * t + 1)
    f0 = exact_divide(A * A / 4 - t ** 5, (t - 1) ** 2)
    printed = -t ** 3 + (a * a - 8) / 4 * t ** 2 - (a * a + 5 * a + 6) / 2 * t + (a + 3) ** 2 / 4
    _record(1, "f0_5 = (A^2/4 - t^5)/(t-1)^2 matches the display exactly", [] if f0 == printed else ["mismatch"])


def test_criterion_2_delta_h():
    h = parse_poly("-(3*a2*x + 5*x - 25 - 5*a2)*(a2*x - a2 - 10)") * parse_poly(
        "(5+5*a2+a2^2)*x^4 - 2*(5+a2)*(5+2*a2)*x^3 + 2*(50+20*a2+3*a2^2)*x^2 - 2*(5+a2)*(-5+2*a2)*x + (-25-5*a2+a2^2)")
    disc = discriminant(h, "x")
    target = parse_poly("2^30*5^5*(15+4*a2)^2*(-25-5*a2+a2^2)^14")
    fails = []
    if disc != target:
        ratio = exact_divide(disc, target) if not disc.is_zero() else None
        fails.append(f"ratio {ratio}")
    _record(2, "Delta_h = 2^30 5^5 (15+4a)^2 (a^2-5a-25)^14 with disc = (-1)^(d(d-1)/2) res(h,h')/lc(h)", fails)


REQUIRED = ["n6.f0", "n6.Etilde", "n6.Y", "n6.Ytilde_tau1", "n6.Ytilde_tau2", "n6.Z", "n6.Ztilde_sigma1",
            "n6.Ztilde_sigma2", "n7.f0", "n7.Etilde", "n7.g", "n8.f0", "n8.Etilde", "n8.g", "n8.h",
            "n4.Wtilde", "n5.E", "n5.C", "n4.E1", "n4.E2", "n6.h", "n6.g", "n8.h_raw", "n5.f0"]
ALLOWED_ERRATA = {"n6.h", "n8.h", "n8.h_raw", "n6.Ytilde_tau2"}


def test_criterion_3_golden_models():
    results = {r.id: r for n in GOLDEN_NS for r in golden_models(n)}
    fails = []
    for gid in REQUIRED:
        r = results.get(gid)
        if r is None:
            fails.append(f"{gid} missing")
        elif r.status == "pass":
            continue
        elif r.status == "pass-with-errata" and gid in ALLOWED_ERRATA and r.delta:
            continue
        else:
            fails.append(f"{gid}: {r.status}, {r.delta or [c.residue for c in r.certificates if not c.ok]}")
    _record(3, "every displayed model certified with zero residue (errata only where allowed)", fails)


PRINTED_SQUARES = {
    4: {"Ytilde": 1, "Wtilde": 1},
    5: {"Ctilde": 6, "Xtilde": 2, "Etilde": 1, "C": 1, "X": 1, "Ytilde": 2, "Y": 0},
    6: {"Ctilde": 13, "Xtilde": 3, "Etilde": 2, "C": 4, "X": 1, "Ytilde": 6, "Y": 2, "Ztilde": 4, "Z": 1},
    7: {"Ctilde": 22, "Xtilde": 4, "Etilde": 2, "C": 8, "X": 2, "Ytilde": 9, "Y": 3},
    8: {"Ctilde": 33, "Xtilde": 5, "Etilde": 3, "C": 13, "X": 2, "Ytilde": 15, "Y": 6, "Ztilde": 13, "Z": 5},
}


def test_criterion_4_genus_diagrams():
    fails = []
    for n, squares in PRINTED_SQUARES.items():
        got = genus_diagram(n)
        for name, g in squares.items():
            if got.get(name) != g:
                fails.append(f"n={n} {name}: {got.get(name)} != {g}")
    _record(4, "all printed genus squares from fixed points and Hurwitz", fails)


def _waring(n):
    out = MPoly()
    for j in range(n // 2 + 1):
        out = out + MPoly.monomial(mpq(n, n - j) * comb(n - j, j) * (-1) ** j, {"u": n - 2 * j, "v": j})
    return out


def test_criterion_5_identity_families():
    x, z, v = MPoly.var("x"), MPoly.var("z"), MPoly.var("v")
    fails = []
    for n in range(1, 33):
        if newton_P(n) != _waring(n) or newton_P(n).subs({"u": x + z, "v": x * z}) != x ** n + z ** n:
            fails.append(f"P_{n}")
    for n in range(2, 17, 2):
        k = (n & -n).bit_length() - 1
        c = root_of_unity(2 ** k, -1)
        q = twisted_Q(n)
        if q != newton_P(n).subs({"v": v.scale(c)}) or q.subs({"u": x + z.scale(c), "v": x * z}) != x ** n + z ** n:
            fails.append(f"Q_{n}")
    for n in range(4, 13):
        fam = build_family(n)
        grads = [fam.f.derivative(s) for s in "xyz"]
        for p in fam.nodes:
            at = {"x": MPoly.const(p[0]), "y": MPoly.const(p[1]), "z": MPoly.const(p[2])}
            if not fam.f.subs(at).is_zero() or any(not g.subs(at).is_zero() for g in grads):
                fails.append(f"node n={n}")
        try:
            shape = blowup_node(n)
            e = shape.f_local.subs({"x1": 0})
            if e.coeff("s", 0) != e.coeff("s", 2) or e.degree("s") != 2:
                fails.append(f"blowup n={n}")
        except AssertionError as exc:
            fails.append(f"blowup n={n}: {exc}")
    _record(5, "P_n (n<=32), Q_n (even n<=16), node and gradient vanishing, blow-up palindrome (4<=n<=12)", fails)


def test_criterion_6_ledgers():
    fails = []
    for n in range(4, 11):
        led = build_ledger(n)
        if sum(led.dims) != n * (n - 3) // 2:
            fails.append(f"sum n={n}")
    if build_ledger(5).dims != [1, 2, 2]:
        fails.append("n=5 ledger")
    if sorted(build_ledger(6).dims, reverse=True) != [2, 2, 2, 2, 1]:
        fails.append("n=6 ledger")
    if build_ledger(4).dims != [1, 1]:
        fails.append("n=4 ledger")
    for n in range(4, 13):
        if rm_metadata(n)["degree"] != max(euler_phi(n) // 2, 1):
            fails.append(f"rm degree n={n}")
    if rm_metadata(5)["field_minpoly"] != "T^2 + T - 1" or rm_metadata(8)["field_minpoly"] != "T^2 - 2":
        fails.append("rm minimal polynomials")
    _record(6, "dimension ledgers and real-multiplication fields", fails)


def test_criterion_7_differentials():
    fails = []
    for n in range(5, 13):
        c = basis_counts(n)
        if c["dim_C"] != (n * n - 5 * n + 2) // 2 or c["dim_Prym"] != n * (n - 3) // 2:
            fails.append(f"counts n={n}")
        rep = eigenspace_table(n, strict=False)
        if not rep.ok:
            fails.append(f"eigen n={n}: {[k['id'] for k in rep.checks if not k['ok']]}")
        pairs = prym_pair_count(n)
        if rep.prym_counts["Y"] != pairs + n // 2 - 1:
            fails.append(f"Y count n={n}")
        if n % 2 == 0 and rep.prym_counts["Z"] != pairs + n // 2 - 2:
            fails.append(f"Z count n={n}")
        if n % 2 and rep.beta_on_complement["plus"] != rep.beta_on_complement["minus"]:
            fails.append(f"beta balance n={n}")
        if n in (6, 8) and not rep.theta_cancellation:
            fails.append(f"theta cancellation n={n}")
    for n in range(5, 9):
        from nodalprym.curves import alpha

        zeta = root_of_unity(n)
        for k, img in action_images(alpha(n)).items():
            e = k.a - k.b if k.b is not None else k.a
            if img.coeffs != {k: zeta ** (e % n)}:
                fails.append(f"alpha eigenvalue {k} n={n}")
        if any(img.coeffs != {k: -1} for k, img in action_images(gamma(n)).items()):
            fails.append(f"gamma n={n}")
    _record(7, "basis counts, alpha eigenvalues by substitution, beta balance, theta cancellation, Prym counts", fails)


def test_criterion_8_isogenies_asserted_only():
    fails = []
    for n in range(4, 11):
        led = build_ledger(n)
        if any(f.status != "asserted" for f in led.factors + led.blocks):
            fails.append(f"n={n} claims a certified isogeny")
    _record(8, "isogenies recorded as asserted; acceptance rests on criteria 4-7", fails)
