"""Independent re-derivation of the stage schedule and residual ledger.

Each ledger entry is obtained by multiplying complex-exponential expansions of
the two modes and projecting, not from the closed pair formula used by the
library. Prints the goldens frozen in test_construction.cpp.
"""
import math
from fractions import Fraction

from mpmath import mp, mpf, mpc, sqrt, atan2, pi

mp.dps = 70


def canonical(k):
    return k if (k[0] > 0 or (k[0] == 0 and k[1] > 0)) else (-k[0], -k[1])


def norm2(k):
    return k[0] * k[0] + k[1] * k[1]


class Mode:
    """(a cos(k.x) + b sin(k.x)) k^perp with k raw."""

    def __init__(self, k, a, b):
        self.k, self.a, self.b = k, mpf(a), mpf(b)

    @staticmethod
    def polar(k, rho, theta):
        return Mode(k, rho * mp.cos(theta), -rho * mp.sin(theta))


def scalar_poly(k, a, b):
    # a cos + b sin = (a - i b)/2 e^{ikx} + (a + i b)/2 e^{-ikx}
    return {k: mpc(a, -b) / 2, (-k[0], -k[1]): mpc(a, b) / 2}


def multiply(p, q):
    out = {}
    for k1, c1 in p.items():
        for k2, c2 in q.items():
            k = (k1[0] + k2[0], k1[1] + k2[1])
            out[k] = out.get(k, 0) + c1 * c2
    return out


def advect(A, B):
    """A . grad B as {K: (cx, cy)} complex exponential coefficients."""
    # d/dx_m of (a cos + b sin)(k.x) is (-a sin + b cos) k_m
    ux = scalar_poly(A.k, -A.k[1] * A.a, -A.k[1] * A.b)
    uy = scalar_poly(A.k, A.k[0] * A.a, A.k[0] * A.b)
    dB = scalar_poly(B.k, B.b, -B.a)
    udotk = {}
    for poly, km in ((ux, B.k[0]), (uy, B.k[1])):
        for k, c in poly.items():
            udotk[k] = udotk.get(k, 0) + c * km
    prod = multiply(udotk, dB)
    bp = (-B.k[1], B.k[0])
    return {k: (c * bp[0], c * bp[1]) for k, c in prod.items()}


def project(vec_poly, K):
    """Phasor (a, b) of the Leray projection at canonical K."""
    cx, cy = vec_poly.get(K, (0, 0))
    # v cos + w sin with c_K = (v - i w)/2
    v = (2 * mpc(cx).real, 2 * mpc(cy).real)
    w = (-2 * mpc(cx).imag, -2 * mpc(cy).imag)
    kp = (-K[1], K[0])
    n2 = norm2(K)
    return ((v[0] * kp[0] + v[1] * kp[1]) / n2, (w[0] * kp[0] + w[1] * kp[1]) / n2)


def symmetric_piece(A, B, K):
    K = canonical(K)
    p1 = project(advect(A, B), K)
    p2 = project(advect(B, A), K)
    return K, (p1[0] + p2[0], p1[1] + p2[1])


class Entry:
    def __init__(self, gamma, a, b, rule):
        self.gamma, self.a, self.b, self.rule = gamma, a, b, rule

    @property
    def lam(self):
        return sqrt(self.a ** 2 + self.b ** 2)

    @property
    def beta(self):
        return atan2(-self.b, self.a)


def laplacian_entry(m, rule):
    s = -norm2(m.k)
    K = canonical(m.k)
    sign = 1 if K == m.k else -1
    # the mode at -k is (-a cos + b sin)... re-expressed: phasor (a,b) at k equals (-a, b) at -k
    a, b = s * m.a, s * m.b
    if sign < 0:
        a = -a
    return Entry(K, a, b, rule)


def cross_entry(A, B, plus, rule):
    K = (A.k[0] + B.k[0], A.k[1] + B.k[1]) if plus else (A.k[0] - B.k[0], A.k[1] - B.k[1])
    if K == (0, 0):
        raise RuntimeError("degenerate frequency")
    Kc, (a, b) = symmetric_piece(A, B, K)
    return Entry(Kc, -a, -b, rule)


def build(rho0, k0, C0, e, unsafe, stages):
    theta0 = mpf(0) if canonical(k0) == k0 else pi
    k0c = canonical(k0)
    u0 = Mode.polar(k0c, mpf(rho0.numerator) / rho0.denominator, theta0)
    ledger = [laplacian_entry(u0, "initial")]
    recs = [dict(n=0, k=k0c, N=1, rho=mpf(rho0.numerator) / rho0.denominator, v=u0, w=None)]
    for n in range(1, stages + 1):
        target = ledger[n - 1]
        omega = target.gamma
        prev = recs[-1]["k"]
        w2 = norm2(omega)
        N = math.isqrt(64 * norm2(prev) // w2)
        while N * N * w2 <= 64 * norm2(prev):
            N += 1
        N = max(N, 9)
        if not unsafe:
            q = 4 * C0 ** 6 / rho0 ** 4
            N = max(N, -((-q.numerator) // q.denominator), (8 * n - 1) ** e)
        k = (N * omega[1], -N * omega[0])
        lam = target.lam
        rho = sqrt(2 * lam / (N * w2))
        eta = target.beta - pi / 2
        v = Mode.polar(k, rho, 0)
        w = Mode.polar((k[0] + omega[0], k[1] + omega[1]), rho, eta)
        recs.append(dict(n=n, k=k, N=N, rho=rho, v=v, w=w, omega=omega))
        ledger.append(laplacian_entry(v, "laplacian_v"))
        ledger.append(laplacian_entry(w, "laplacian_w"))
        ledger.append(cross_entry(v, w, True, "resonant_sum"))
        olds_v = [r["v"] for r in recs[:-1]]
        olds_w = [r["w"] for r in recs[1:-1]]
        for A, olds, tag in ((v, olds_v, "v_v"), (v, olds_w, "v_w"), (w, olds_v, "w_v"), (w, olds_w, "w_w")):
            for plus in (True, False):
                for B in olds:
                    ledger.append(cross_entry(A, B, plus, tag))
        assert len(ledger) == 4 * n * n + 3 * n + 1
    return recs, ledger


def tail(ledger, n):
    return sum(e.lam / norm2(e.gamma) for e in ledger[n:]) / sqrt(2)


def report(name, recs, ledger):
    print(f"[{name}]")
    for r in recs:
        print(f"  stage {r['n']}: N={r['N']} k={r['k']} rho={mp.nstr(r['rho'], 20)}")
    S = len(recs) - 1
    for n in range(0, S + 1):
        print(f"  tail({n}) = {mp.nstr(tail(ledger, n), 20)}")
    if S >= 1:
        print(f"  tail({S})/tail(1) = {mp.nstr(tail(ledger, S) / tail(ledger, 1), 20)}")
    for p, e in enumerate(ledger[:8], 1):
        beta = mp.nstr(e.beta / pi, 10)
        print(f"  entry {p}: gamma={e.gamma} |lambda|={mp.nstr(e.lam, 20)} beta/pi={beta} {e.rule}")
    # minimal C0 witness
    c0 = mpf(0)
    for n in range(1, S + 1):
        t = ledger[n - 1]
        j = next(m for m in range(S + 1) if n <= (1 if m == 0 else 4 * m * m + 3 * m + 1))
        src = recs[j]
        sup = max([mpf(1)] + [recs[i]["rho"] for i in range(j + 1)])
        c0 = max(c0, sqrt(mpf(norm2(src["k"])) / norm2(recs[n]["omega"])), t.lam / (norm2(src["k"]) * src["rho"] * sup))
    print(f"  c0 witness = {mp.nstr(c0, 30)}")


if __name__ == "__main__":
    recs, ledger = build(Fraction(1, 2), (1, 1), Fraction(4), 12, False, 8)
    report("default", recs, ledger)
    recs, ledger = build(Fraction(1, 2), (1, 1), Fraction(4), 12, True, 3)
    report("toy", recs, ledger)
    recs, ledger = build(Fraction(1, 2), (-1, 2), Fraction(4), 12, True, 1)
    report("flipped", recs, ledger)
