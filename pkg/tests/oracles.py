"""Independent reference implementations used to check the library.

Plain Python complex arithmetic, no shared code with the package.
"""

import cmath
import itertools


def zeta(q, k):
    return cmath.exp(2j * cmath.pi * (k % q) / q)


def naive_accs(a, b, q, tau):
    # sum_i a_{i+tau} conj(b_i) for tau >= 0, sum_i a_i conj(b_{i-tau}) for tau < 0
    n = len(a)
    if tau >= 0:
        return sum(zeta(q, a[i + tau]) * zeta(q, -b[i]) for i in range(n - tau))
    return sum(zeta(q, a[i]) * zeta(q, -b[i - tau]) for i in range(n + tau))


def naive_code_ccs(A, B, q, tau):
    return sum(naive_accs(a, b, q, tau) for a, b in zip(A, B))


def naive_function(p, q, path_vertices, r, gamma, theta, alpha_digits, beta_digits, delta_digits):
    """Phase of every index, straight from the defining formula.

    ``path_vertices`` lists each path's variables in path order; digit i of
    alpha/beta belongs to path i; index digit 0 is the most significant.
    """
    n = sum(len(v) for v in path_vertices)
    w = q // p
    out = []
    for x in itertools.product(range(p), repeat=n + r):
        f = theta + sum(g * xi for g, xi in zip(gamma, x))
        for i, vs in enumerate(path_vertices):
            f += w * sum(x[vs[j]] * x[vs[j + 1]] for j in range(len(vs) - 1))
            f += w * (alpha_digits[i] * x[vs[0]] + beta_digits[i] * x[vs[-1]])
        f += w * sum(d * xi for d, xi in zip(delta_digits, x[n:]))
        out.append(f % q)
    return out


def digits(v, p, m):
    ds = []
    for _ in range(m):
        v, d = divmod(v, p)
        ds.append(d)
    return ds[::-1]


def brute_pmepr(seq, q, samples):
    # |sum_i a_i e^{2 pi j i t}|^2 / N over t = j / samples
    n = len(seq)
    best = 0.0
    for j in range(samples):
        t = j / samples
        s = sum(zeta(q, a) * cmath.exp(2j * cmath.pi * i * t) for i, a in enumerate(seq))
        best = max(best, abs(s) ** 2)
    return best / n


def read_sign_fixture(path):
    codes, cur = [], []
    for line in open(path, encoding="utf-8"):
        line = line.strip()
        if line.startswith("#"):
            continue
        if not line:
            if cur:
                codes.append(cur)
                cur = []
            continue
        cur.append([0 if c == "+" else 1 for c in line])
    if cur:
        codes.append(cur)
    return codes
