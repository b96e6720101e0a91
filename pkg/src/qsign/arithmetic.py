"""Cusp decompositions, Kloosterman sums, and the twisted sums driving the
exact formulas, together with all their bound checks and reduction identities.

Every summand of the twisted sums is +- a 10k-th root of unity, so sums are
evaluated by exact integer exponent arithmetic modulo 10k followed by table
lookups of high-precision roots; the only numerical error is the table's
few-ulp rounding times the number of terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from mpmath import mp, mpf

from .numerics import ErrComplex, ErrReal, working_precision

__all__ = [
    "CuspData",
    "KloostermanValue",
    "divisor_count",
    "alpha_of",
    "decompose",
    "select_hprime",
    "kloosterman",
    "weil_bound_check",
    "a_kj",
    "a_kj_rewrite",
    "a_kj_reduced_d5",
    "a_kj_reduced_d10_abs",
    "a_k",
    "cal_a_k",
    "bound_check_d5",
    "bound_check_d10",
    "aggregated_bound_check",
    "clear_caches",
]


def divisor_count(n: int) -> int:
    """Number of positive divisors, by trial-division factorization."""
    if n < 1:
        raise ValueError("divisor_count needs n >= 1")
    count = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            count *= e + 1
        p += 1 if p == 2 else 2
    if n > 1:
        count *= 2
    return count


def alpha_of(j: int, d: int) -> int:
    """The unique representative of 3j mod d in [1, d)."""
    if gcd(j, d) != 1:
        raise ValueError("j must be coprime to d")
    a = (3 * j) % d
    assert a != 0  # impossible for gcd(j,d)=1 and d in {5,10}
    return a


def select_hprime(h: int, k: int, d: int) -> int:
    """Smallest nonnegative x with h*x == -1 (mod k) and (10/d) | x.

    Scans x0 + t*k for t = 0..(10/d)-1 over the base inverse x0.
    """
    x0 = (-pow(h, -1, k)) % k if k > 1 else 0
    step = 10 // d
    for t in range(step):
        cand = x0 + t * k
        if cand % step == 0:
            return cand
    raise AssertionError("no admissible modular inverse found")  # unreachable


@dataclass(frozen=True)
class CuspData:
    """Arithmetic data attached to a fraction h/k with gcd(k,10) in {5,10}.

    3h = h1*k + h2 with 0 <= h2 < k; h = d*nu1 + nu2 and h2 = d*mu1 + mu2
    with 0 <= nu2, mu2 < d; alpha == 3*(h mod d) (mod d) in [1, d).
    """

    k: int
    h: int
    hprime: int
    d: int
    h1: int
    h2: int
    nu1: int
    nu2: int
    mu1: int
    mu2: int
    alpha: int


def decompose(h: int, k: int) -> CuspData:
    if k < 1:
        raise ValueError("k must be positive")
    d = gcd(k, 10)
    if d not in (5, 10):
        raise ValueError("gcd(k,10) must be 5 or 10")
    if gcd(h, k) != 1:
        raise ValueError("h must be coprime to k")
    h %= k
    h1, h2 = divmod(3 * h, k)
    nu1, nu2 = divmod(h, d)
    mu1, mu2 = divmod(h2, d)
    return CuspData(
        k=k,
        h=h,
        hprime=select_hprime(h, k, d),
        d=d,
        h1=h1,
        h2=h2,
        nu1=nu1,
        nu2=nu2,
        mu1=mu1,
        mu2=mu2,
        alpha=alpha_of(nu2, d),
    )


# ---------------------------------------------------------------------------
# root-of-unity tables and exact-exponent summation
# ---------------------------------------------------------------------------

_ROOT_TABLES: dict[tuple[int, int], list] = {}
_INVERSE_PAIRS: dict[int, list] = {}
_AKJ_TERMS: dict[tuple[int, int, int, int], list] = {}


def clear_caches() -> None:
    _ROOT_TABLES.clear()
    _INVERSE_PAIRS.clear()
    _AKJ_TERMS.clear()


def _roots(modulus: int) -> list:
    """Table of e^(2*pi*i*t/modulus) components at the current precision."""
    from mpmath import cospi, sinpi

    key = (modulus, mp.prec)
    table = _ROOT_TABLES.get(key)
    if table is None:
        table = []
        m = mpf(modulus)
        for t in range(modulus):
            frac = mpf(2 * t) / m
            table.append((+cospi(frac), +sinpi(frac)))
        _ROOT_TABLES[key] = table
    return table


def _root_sum(modulus: int, exponents) -> ErrComplex:
    """Sum of ζ_modulus^e over e in exponents, with a rigorous error bound."""
    table = _roots(modulus)
    re = mpf(0)
    im = mpf(0)
    count = 0
    for e in exponents:
        c, s = table[e % modulus]
        re += c
        im += s
        count += 1
    # per-entry table error <= 2^(4-prec); accumulation rounding <= count^2 ulp
    err = (count * 16 + count * count) * (mpf(2) ** -mp.prec) + mpf(2) ** (4 - mp.prec)
    return ErrComplex(ErrReal(re, err), ErrReal(im, err))


def _inverse_pairs(modulus: int) -> list:
    """Pairs (h, h') with h h' == -1 (mod modulus) over h coprime to modulus."""
    pairs = _INVERSE_PAIRS.get(modulus)
    if pairs is None:
        if modulus == 1:
            pairs = [(0, 0)]
        else:
            pairs = [
                (h, (-pow(h, -1, modulus)) % modulus)
                for h in range(1, modulus)
                if gcd(h, modulus) == 1
            ]
        _INVERSE_PAIRS[modulus] = pairs
    return pairs


# ---------------------------------------------------------------------------
# classical Kloosterman sums
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KloostermanValue:
    k: int
    n: int
    m: int
    value: ErrComplex


def kloosterman(k: int, n: int, m: int, prec: int = 128) -> KloostermanValue:
    """K_k(n, m) over residues h coprime to k with h h' == -1 (mod k)."""
    if k < 1:
        raise ValueError("k must be positive")
    with working_precision(prec):
        value = _root_sum(k, ((n * h + m * hp) % k for h, hp in _inverse_pairs(k)))
    return KloostermanValue(k, n, m, value)


def weil_bound_check(k: int, n: int, m: int, prec: int = 128) -> bool:
    """|K_k(n,m)| <= sqrt(gcd(n,m,k)) d(k) sqrt(k), within error bars.

    The inequality can be attained exactly (k=1), so a failure is reported
    only when the violation exceeds the error bars.
    """
    kv = kloosterman(k, n, m, prec)
    g = gcd(gcd(abs(n), abs(m)), k)
    with working_precision(prec):
        bound = ErrReal(g).sqrt() * divisor_count(k) * ErrReal(k).sqrt()
        return not kv.value.abs().lo > bound.hi


# ---------------------------------------------------------------------------
# twisted sums A_{k,j}(n) and friends
# ---------------------------------------------------------------------------


def _term_exponent_parts(h: int, hprime: int, k: int) -> int:
    """Exact ζ_{10k} exponent of one summand, without the -10(n+1)h part.

    The summand is (-1)^(h1+nu1+mu1) ζ_{10k}^(3 mu2 - nu2 - d)
    e^{(2 pi i/k)(d^2/20)(nu1^2 - mu1^2 + nu1 - mu1) h'};  nu1(nu1+1) -
    mu1(mu1+1) is always even, so for d=5 the numerator 25/2 * poly * h'
    is an integer without conditions on h'.
    """
    d = gcd(k, 10)
    h1, h2 = divmod(3 * h, k)
    nu1, nu2 = divmod(h, d)
    mu1, mu2 = divmod(h2, d)
    poly = nu1 * (nu1 + 1) - mu1 * (mu1 + 1)
    if d == 10:
        quad = 50 * poly * hprime
    else:
        quad = 25 * (poly // 2) * hprime
    return 5 * k * ((h1 + nu1 + mu1) % 2) + (3 * mu2 - nu2 - d) + quad


def _akj_exponent_table(k: int, j: int, h_shift: int = 0, hp_shift: int = 0) -> list:
    """Per-h (base, step) with summand exponent base + n*step (mod 10k).

    h_shift/hp_shift evaluate the sum with shifted representatives
    h + h_shift*k and h' + hp_shift * (10/d) * k, exercising the mod-k
    well-definedness of the summands.
    """
    d = gcd(k, 10)
    key = (k, j % d, h_shift, hp_shift)
    table = _AKJ_TERMS.get(key)
    if table is not None:
        return table
    mod = 10 * k
    table = []
    for h in range(1, k):
        if h % d != j % d or gcd(h, k) != 1:
            continue
        hp = select_hprime(h, k, d) + hp_shift * (10 // d) * k
        hh = h + h_shift * k
        base = _term_exponent_parts(hh, hp, k) - 10 * hh  # n = 0 part
        step = (-10 * hh) % mod
        table.append((base % mod, step))
    _AKJ_TERMS[key] = table
    return table


def a_kj(k: int, j: int, n: int, prec: int = 128) -> ErrComplex:
    """Direct summation of the twisted sum A_{k,j}(n) over 1 <= h < k."""
    d = gcd(k, 10)
    if d not in (5, 10):
        raise ValueError("gcd(k,10) must be 5 or 10")
    if gcd(j, d) != 1:
        raise ValueError("j must be coprime to gcd(k,10)")
    table = _akj_exponent_table(k, j)
    mod = 10 * k
    with working_precision(prec):
        return _root_sum(mod, ((base + n * step) % mod for base, step in table))


def a_kj_rewrite(
    k: int,
    j: int,
    n: int,
    prec: int = 128,
    h_shift: int = 1,
    hp_shift: int = 2,
) -> ErrComplex:
    """The rewrite of A_{k,j}(n): prefactor ζ_{10k}^(3 alpha_j - j - d) times
    the residue-class sum, evaluated with shifted representatives.

    With the defaults each h runs through h + k and each h' through
    h' + 2*(10/d)*k, so agreement with a_kj checks both the pulled-out
    prefactor and the mod-k well-definedness.
    """
    d = gcd(k, 10)
    if d not in (5, 10):
        raise ValueError("gcd(k,10) must be 5 or 10")
    jr = j % d
    if gcd(jr, d) != 1:
        raise ValueError("j must be coprime to gcd(k,10)")
    pref = 3 * alpha_of(jr, d) - jr - d
    mod = 10 * k
    table = _akj_exponent_table(k, j, h_shift=h_shift, hp_shift=hp_shift)
    with working_precision(prec):
        # the shifted tables carry the full summand including its own
        # ζ^(3 mu2 - nu2 - d); strip to the inner sum, reapply the prefactor
        exps = []
        for base, step in table:
            inner = base - (3 * alpha_of(jr, d) - jr - d)
            exps.append((pref + inner + n * step) % mod)
        return _root_sum(mod, exps)


def a_kj_reduced_d5(
    k: int, j: int, n: int, prec: int = 128, alpha_shift: int = 0
) -> ErrComplex:
    """A_{k,j}(n) for gcd(k,10)=5 rewritten through classical Kloosterman sums:
    -(1/25) sum_l e^(2 pi i j l / 5) K_{5k}((5n+3)(k^2-1)/4 + l k, j^2-5j-alpha^2+5alpha).

    alpha_shift deliberately corrupts alpha_j; nonzero values are the
    negative control used by the sweep suite.
    """
    if gcd(k, 10) != 5:
        raise ValueError("k must have gcd(k,10) = 5")
    jr = j % 5
    if gcd(jr, 5) != 1:
        raise ValueError("j must be coprime to 5")
    # (1-k^2)/4 is the inverse of 4 modulo 5k
    inv4 = (1 - k * k) // 4
    assert (4 * inv4) % (5 * k) == 1 % (5 * k)
    al = alpha_of(jr, 5) + alpha_shift
    cj = jr * jr - 5 * jr - al * al + 5 * al
    with working_precision(prec):
        total = ErrComplex(0)
        for ell in range(5):
            kv = kloosterman(5 * k, (5 * n + 3) * (k * k - 1) // 4 + ell * k, cj, prec)
            total = total + ErrComplex.unit_root(jr * ell, 5) * kv.value
        return total * ErrReal(mpf(-1)) / ErrReal(25)


def a_kj_reduced_d10_abs(
    k: int, j: int, n: int, prec: int = 128, alpha_shift: int = 0
) -> ErrReal:
    """|A_{k,j}(n)| for gcd(k,10)=10 through classical Kloosterman sums:
    (1/50) |sum_l e^(-2 pi i j l / 5) K_{10k}(2(k l - 5n - 3), (j^2-10j-alpha^2+10alpha)/2)|.
    """
    if gcd(k, 10) != 10:
        raise ValueError("k must have gcd(k,10) = 10")
    jr = j % 10
    if gcd(jr, 10) != 1:
        raise ValueError("j must be coprime to 10")
    al = alpha_of(jr, 10) + alpha_shift
    num = jr * jr - 10 * jr - al * al + 10 * al
    if num % 2:
        raise ValueError("corrupted alpha made the twist parameter a half-integer")
    with working_precision(prec):
        total = ErrComplex(0)
        for ell in range(5):
            kv = kloosterman(10 * k, 2 * (k * ell - 5 * n - 3), num // 2, prec)
            total = total + ErrComplex.unit_root(-jr * ell, 5) * kv.value
        return total.abs() / ErrReal(50)


def a_k(k: int, n: int, prec: int = 128) -> ErrComplex:
    """A_k(n) = A_{k,3}(n) + A_{k,-3}(n)."""
    return a_kj(k, 3, n, prec) + a_kj(k, -3, n, prec)


def cal_a_k(k: int, n: int, prec: int = 128) -> ErrComplex:
    """The conjugated twist entering the reciprocal's formula:
    conj(A_{k,1}(-n)) + conj(A_{k,-1}(-n))."""
    return a_kj(k, 1, -n, prec).conjugate() + a_kj(k, -1, -n, prec).conjugate()


# ---------------------------------------------------------------------------
# bound checks
# ---------------------------------------------------------------------------


def _sqrt_rational(num: int, den: int) -> ErrReal:
    return (ErrReal(num) / ErrReal(den)).sqrt()


def bound_check_d5(k: int, j: int, n: int, prec: int = 128) -> bool:
    """|A_{k,j}(n)| <= 2 d(k) sqrt(k/5) for gcd(k,10)=5, within error bars."""
    if gcd(k, 10) != 5:
        raise ValueError("k must have gcd(k,10) = 5")
    val = a_kj(k, j, n, prec)
    with working_precision(prec):
        bound = ErrReal(2 * divisor_count(k)) * _sqrt_rational(k, 5)
        return not val.abs().lo > bound.hi


def bound_check_d10(k: int, j: int, n: int, prec: int = 128) -> bool:
    """|A_{k,j}(n)| <= d(10k) sqrt(3k/5) for gcd(k,10)=10, within error bars."""
    if gcd(k, 10) != 10:
        raise ValueError("k must have gcd(k,10) = 10")
    val = a_kj(k, j, n, prec)
    with working_precision(prec):
        bound = ErrReal(divisor_count(10 * k)) * _sqrt_rational(3 * k, 5)
        return not val.abs().lo > bound.hi


def aggregated_bound_check(k: int, n: int, prec: int = 128, twisted: bool = False) -> bool:
    """|A_k(n)| (or |cal A_k(n)| when twisted) against the aggregated bound:
    4 d(k) sqrt(k/5) for gcd(k,10)=5, 2 d(10k) sqrt(3k/5) for gcd(k,10)=10."""
    d = gcd(k, 10)
    if d not in (5, 10):
        raise ValueError("gcd(k,10) must be 5 or 10")
    val = cal_a_k(k, n, prec) if twisted else a_k(k, n, prec)
    with working_precision(prec):
        if d == 5:
            bound = ErrReal(4 * divisor_count(k)) * _sqrt_rational(k, 5)
        else:
            bound = ErrReal(2 * divisor_count(10 * k)) * _sqrt_rational(3 * k, 5)
        return not val.abs().lo > bound.hi
