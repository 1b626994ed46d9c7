"""Binary forms and univariate polynomials with exact coefficients.

A binary form of degree d is a tuple ``c`` of length d + 1 where ``c[k]``
is the coefficient of u^(d-k) v^k.  A linear form is therefore ``(a, b)``
meaning a*u + b*v.  Univariate polynomials are lists of coefficients in
ascending degree.
"""

from __future__ import annotations

from fractions import Fraction


def form_add(f, g):
    if len(f) != len(g):
        raise ValueError("forms must have the same degree")
    return tuple(a + b for a, b in zip(f, g))


def form_scale(f, c):
    return tuple(c * a for a in f)


def form_mul(f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return tuple(out)


def form_pow(f, e: int):
    out = (1,)
    for _ in range(e):
        out = form_mul(out, f)
    return out


def form_eval(f, u, v):
    d = len(f) - 1
    return sum(c * u ** (d - k) * v**k for k, c in enumerate(f))


def form_is_zero(f) -> bool:
    return all(c == 0 for c in f)


def form_substitute(f, x_form, y_form):
    """f(x_form(s, t), y_form(s, t)) for linear forms x_form, y_form."""
    d = len(f) - 1
    out = (0,) * (d + 1)
    for k, c in enumerate(f):
        if c:
            term = form_mul(form_pow(x_form, d - k), form_pow(y_form, k))
            out = form_add(out, form_scale(term, c))
    return out


def quintic_from_linear(l1, l2, m1, m2):
    """Expanded coefficients of L1^2 M1^3 + L2^2 M2^3."""
    return form_add(
        form_mul(form_pow(l1, 2), form_pow(m1, 3)),
        form_mul(form_pow(l2, 2), form_pow(m2, 3)),
    )


def linear_proportional(f, g) -> bool:
    return f[0] * g[1] - f[1] * g[0] == 0


# univariate polynomials over Q, ascending coefficients


def poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_deriv(a):
    return poly_trim([k * c for k, c in enumerate(a)][1:])


def poly_divmod(a, b):
    a = [Fraction(c) for c in poly_trim(a)]
    b = [Fraction(c) for c in poly_trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / b[-1]
        q[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] -= c * bc
        a = poly_trim(a)
    return poly_trim(q), a


def poly_gcd(a, b):
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return []
    lead = Fraction(a[-1])
    return [Fraction(c) / lead for c in a]


def squarefree_decomposition(a):
    """Yun's algorithm: monic square-free a_1, a_2, ... with a ~ prod a_i^i."""
    a = poly_trim(a)
    if len(a) <= 1:
        return []
    out = []
    b = poly_gcd(a, poly_deriv(a))
    c = poly_divmod(a, b)[0]
    d = poly_trim(
        [x - y for x, y in zip(*_pad(poly_divmod(poly_deriv(a), b)[0], poly_deriv(c)))]
    )
    while len(c) > 1:
        f = poly_gcd(c, d)
        out.append(f)
        c = poly_divmod(c, f)[0]
        d = poly_trim([x - y for x, y in zip(*_pad(poly_divmod(d, f)[0], poly_deriv(c)))])
    return out


def _pad(a, b):
    n = max(len(a), len(b))
    return list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b))


def is_constant_times_square(a) -> bool:
    """True iff a = c * g(x)^2 for a constant c and polynomial g over Q-bar."""
    a = poly_trim(a)
    if not a:
        return True
    parts = squarefree_decomposition(a)
    return all(len(f) <= 1 for f in parts[0::2])


def _bareiss_det(m):
    m = [list(r) for r in m]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant(a, b) -> int:
    """Resultant of two integer polynomials (ascending coefficients)."""
    a, b = poly_trim(a), poly_trim(b)
    m, n = len(a) - 1, len(b) - 1
    if m < 0 or n < 0:
        return 0
    if m == 0:
        return a[0] ** n
    if n == 0:
        return b[0] ** m
    size = m + n
    rows = []
    ad, bd = a[::-1], b[::-1]
    for i in range(n):
        rows.append([0] * i + ad + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + bd + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def poly_discriminant(a) -> int:
    """Discriminant of an integer polynomial of degree >= 1."""
    a = poly_trim(a)
    n = len(a) - 1
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    r = resultant(a, poly_deriv(a))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, a[-1])
    assert rem == 0
    return q


def form_discriminant(f) -> int:
    """Discriminant of an integer binary form; zero iff f has a repeated factor.

    Factors of v are peeled off first, using disc(v*G) = disc(G) * G(1, 0)^2.
    """
    f = tuple(f)
    if form_is_zero(f):
        return 0
    d = len(f) - 1
    if d == 0:
        return 1
    if f[0] != 0:
        # F(x, 1) has full degree d; ascending coefficients are f reversed
        return poly_discriminant(list(f[::-1]))
    g = f[1:]  # f = v * g
    if len(g) == 1:
        return 1
    return form_discriminant(g) * g[0] ** 2
