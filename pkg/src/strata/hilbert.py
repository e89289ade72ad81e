"""Rational generating functions with denominator a product of ``(1 - j t)``
powers, and the bound polynomials from the finiteness argument."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Mapping, Sequence

from .linalg import solve


def _trim(coeffs) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_mul(a: Sequence, b: Sequence) -> tuple[Fraction, ...]:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_eval(p: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _divide_linear(p: Sequence, j: int) -> tuple[Fraction, ...]:
    """Exact quotient of ``p(t)`` by ``1 - j t`` (``p(1/j)`` must vanish)."""
    # p = (1 - j t) q; compare coefficients from the constant term upward
    q = []
    prev = Fraction(0)
    for k in range(len(p) - 1):
        prev = Fraction(p[k]) + j * prev
        q.append(prev)
    return _trim(q)


@dataclass(frozen=True)
class RationalGF:
    """``numerator(t) / prod_j (1 - j t)^{d_j}``, kept reduced."""

    numerator: tuple
    denominator_exponents: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        num = _trim(self.numerator)
        den = {int(j): int(d) for j, d in dict(self.denominator_exponents).items() if d}
        if any(j < 1 or d < 0 for j, d in den.items()):
            raise ValueError("denominator factors must be (1 - j t)^d with j >= 1, d >= 0")
        if not num:
            den = {}
        for j in sorted(den):
            while den[j] and poly_eval(num, Fraction(1, j)) == 0:
                num = _divide_linear(num, j)
                den[j] -= 1
        den = {j: d for j, d in sorted(den.items()) if d}
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator_exponents", den)

    @property
    def C(self) -> int:
        return max(self.denominator_exponents, default=0)

    def denominator(self) -> tuple[Fraction, ...]:
        out: tuple = (Fraction(1),)
        for j, d in self.denominator_exponents.items():
            for _ in range(d):
                out = poly_mul(out, (Fraction(1), Fraction(-j)))
        return out

    def coefficients(self, upto: int) -> list[Fraction]:
        """Taylor coefficients ``a_0 .. a_upto`` via the recurrence
        ``sum_k q_k a_{n-k} = p_n`` from the expanded denominator."""
        q = self.denominator()
        p = self.numerator
        a: list[Fraction] = []
        for n in range(upto + 1):
            acc = p[n] if n < len(p) else Fraction(0)
            for k in range(1, min(n, len(q) - 1) + 1):
                acc -= q[k] * a[n - k]
            a.append(acc)
        return a

    def __str__(self) -> str:
        return render(self)


def coefficient(gf: RationalGF, n: int):
    if n < 0:
        raise ValueError("negative index")
    c = gf.coefficients(n)[n]
    return int(c) if c.denominator == 1 else c


def free_hilbert_series(d: int) -> RationalGF:
    """``sum_n #Surj(n, d) t^n = d! t^d / prod_{j<=d} (1 - j t)``."""
    if d < 1:
        raise ValueError("d must be positive")
    return RationalGF((0,) * d + (factorial(d),), {j: 1 for j in range(1, d + 1)})


def poly_exp_decomposition(gf: RationalGF) -> list[tuple[int, tuple[Fraction, ...]]]:
    """Polynomials ``f_j`` with ``a_n = sum_j f_j(n) j^n`` for all large ``n``.

    Each factor ``(1 - j t)^{d_j}`` contributes ``sum_{k<d_j} A_{jk}
    C(n+k, k) j^n``; the ``A_{jk}`` come from an exact linear system on
    coefficients past the polynomial part.
    """
    den = gf.denominator_exponents
    if not den:
        return []
    unknowns = [(j, k) for j, d in den.items() for k in range(d)]
    start = max(0, len(gf.numerator) - sum(den.values()))
    coeffs = gf.coefficients(start + len(unknowns) - 1)
    rows = []
    rhs = []
    for n in range(start, start + len(unknowns)):
        rows.append([Fraction(comb(n + k, k) * j**n) for j, k in unknowns])
        rhs.append(coeffs[n])
    sol = dict(zip(unknowns, solve(rows, rhs)))
    out = []
    for j, d in den.items():
        # C(n+k, k) as a polynomial in n
        poly: tuple = ()
        for k in range(d):
            basis: tuple = (Fraction(1),)
            for r in range(1, k + 1):
                basis = poly_mul(basis, (Fraction(r), Fraction(1)))
            basis = tuple(c / factorial(k) for c in basis)
            poly = _add(poly, tuple(sol[(j, k)] * c for c in basis))
        out.append((j, poly))
    return out


def _add(a: Sequence, b: Sequence) -> tuple[Fraction, ...]:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def evaluate_decomposition(decomp, n: int) -> Fraction:
    return sum((poly_eval(poly, n) * Fraction(j) ** n for j, poly in decomp), Fraction(0))


def decomposition_start(gf: RationalGF) -> int:
    """First index from which the decomposition reproduces the coefficients."""
    return max(0, len(gf.numerator) - sum(gf.denominator_exponents.values()))


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_poly(p: Sequence, var: str = "t") -> str:
    terms = []
    for k, c in enumerate(p):
        if not c:
            continue
        mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
        if not mono:
            body = _fmt(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{_fmt(abs(c))}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


def render(gf: RationalGF) -> str:
    factors = []
    for j, d in gf.denominator_exponents.items():
        base = "(1 - t)" if j == 1 else f"(1 - {j}t)"
        factors.append(base if d == 1 else f"{base}^{d}")
    den = " ".join(factors) if factors else "1"
    return f"{render_poly(gf.numerator)} / {den}"


def decomposition_to_json(decomp) -> list[dict]:
    return [{"base": j, "poly": [_fmt(c) for c in poly]} for j, poly in decomp]


# -- bound polynomials ----------------------------------------------------------

PRINTED_COEFFS = (16, 8, 13, -7)
PROOF_COEFFS = (11, 7, 9, -5)


def f_bound(i: int, e: int, a: int, coeffs: Sequence[int] = PRINTED_COEFFS) -> int:
    """Linear threshold ``r i + s e + t a + u``; by default ``13a + 16i + 8e - 7``."""
    r, s, t, u = coeffs
    return r * i + s * e + t * a + u


def p_bound(g: int, i: int, mode: str = "compositional", coeffs: Sequence[int] = PRINTED_COEFFS) -> int:
    """Bound on the number of legs.

    ``compositional`` evaluates ``(i+1)g + (i+1)g f(i, g, (i+1)g)``;
    ``printed`` evaluates the expanded polynomial
    ``8g^2i^2 + 29g^2i + 16gi^2 + 21g^2 + 10gi - 6g``.
    """
    if mode == "compositional":
        k = (i + 1) * g
        return k + k * f_bound(i, g, k, coeffs)
    if mode == "printed":
        return 8 * g * g * i * i + 29 * g * g * i + 16 * g * i * i + 21 * g * g + 10 * g * i - 6 * g
    raise ValueError(f"unknown mode {mode!r}")


def p_bound_expanded(g: int, i: int) -> int:
    """Expansion of the compositional form with the default coefficients."""
    return 13 * g * g * i * i + 34 * g * g * i + 21 * g * g + 16 * g * i * i + 10 * g * i - 6 * g


def bounds_report(g: int, i: int) -> dict:
    comp = p_bound(g, i, "compositional")
    printed = p_bound(g, i, "printed")
    return {
        "g": g,
        "i": i,
        "f_printed": f_bound(i, g, (i + 1) * g),
        "f_proof_variant": f_bound(i, g, (i + 1) * g, PROOF_COEFFS),
        "p_compositional": comp,
        "p_printed": printed,
        "p_proof_variant": p_bound(g, i, "compositional", PROOF_COEFFS),
        "discrepancy": comp != printed,
    }
