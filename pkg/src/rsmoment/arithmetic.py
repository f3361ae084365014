"""Exact arithmetic: characters, exponential sums, twisted divisor sums.

Dirichlet characters are represented by full value tables built from a
generator decomposition of (Z/NZ)^x.  On top of them the module provides
Kloosterman sums, generalized (character-twisted) Gauss sums c_{chi|q}(m),
character-twisted divisor sums, the local correction factor P_M attached
to imprimitive twists, the level-M twisted divisor coefficient
sigma_{1-2s}(m; xi*, M), Dirichlet L-values by the Hurwitz-zeta expansion,
and a verifier for the closed-form evaluation of the Dirichlet series of
generalized Gauss sums over multiples of the level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .special import hurwitz_zeta

__all__ = [
    "DirichletCharacter",
    "SigmaGeneralResult",
    "kloosterman",
    "twisted_gauss_sum",
    "twisted_gauss_sum_direct",
    "gauss_sum",
    "divisor_sigma_char",
    "local_factor_PM",
    "sigma_general",
    "dirichlet_L",
    "lemma41_verify",
    "factorize",
    "divisors",
    "mobius",
    "euler_phi",
]


# ---------------------------------------------------------------------------
# Elementary number theory helpers


@lru_cache(maxsize=None)
def factorize(n):
    """Prime factorization of n >= 1 as a tuple of (p, exponent) pairs."""
    n = int(n)
    if n < 1:
        raise ValueError("factorize: requires n >= 1")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n):
    """Sorted list of positive divisors of n >= 1."""
    ds = [1]
    for p, e in factorize(abs(int(n))):
        ds = [d * p ** i for d in ds for i in range(e + 1)]
    return sorted(ds)


def mobius(n):
    """Moebius function mu(n)."""
    mu = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        mu = -mu
    return mu


def euler_phi(n):
    """Euler totient function."""
    phi = 1
    for p, e in factorize(n):
        phi *= (p - 1) * p ** (e - 1)
    return phi


def _ord_p(n, p):
    n = abs(int(n))
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def _primitive_root(pk, p):
    """A generator of (Z/p^k Z)^x for odd prime p (or p=2, pk in {2,4})."""
    if pk == 2:
        return 1
    if pk == 4:
        return 3
    phi = euler_phi(pk)
    prime_divs = [q for q, _ in factorize(phi)]
    for g in range(2, pk):
        if np.gcd(g, pk) != 1:
            continue
        if all(pow(g, phi // q, pk) != 1 for q in prime_divs):
            return g
    raise ArithmeticError("no primitive root found for %d" % pk)


def _unit_group_generators(n):
    """Generators and orders of (Z/nZ)^x via CRT, as lists (gens, orders).

    Each generator is given as a residue mod n that is 1 modulo the other
    prime-power components.
    """
    if n == 1:
        return [], []
    gens, orders = [], []
    fac = factorize(n)
    for p, e in fac:
        pk = p ** e
        rest = n // pk
        local = []
        if p == 2 and e >= 3:
            local = [(-1 % pk, 2), (5 % pk, 2 ** (e - 2))]
        elif p == 2 and e == 2:
            local = [(3, 2)]
        elif p == 2 and e == 1:
            local = []
        else:
            local = [(_primitive_root(pk, p), euler_phi(pk))]
        for g, order in local:
            # CRT lift: g mod pk, 1 mod rest.
            if rest == 1:
                lifted = g % n
            else:
                inv = pow(rest % pk, -1, pk) if pk > 1 else 0
                lifted = (1 + rest * ((g - 1) * inv % pk)) % n
            gens.append(lifted)
            orders.append(order)
    return gens, orders


def _discrete_logs(n, gens, orders):
    """Exponent tuple table: for each a coprime to n, the exponents of a in
    the generator decomposition.  Returned as dict a -> tuple."""
    table = {1: tuple(0 for _ in gens)}
    # BFS over products of generator powers.
    frontier = [1]
    # Build full enumeration: iterate over the direct product.
    idx = [0] * len(gens)
    total = 1
    for o in orders:
        total *= o
    vals = {}
    a = 1
    # enumerate mixed-radix counter
    from itertools import product as _product
    for exps in _product(*[range(o) for o in orders]):
        a = 1
        for g, e, o in zip(gens, exps, orders):
            a = (a * pow(g, e, n)) % n
        vals[a] = exps
    return vals


@dataclass(frozen=True)
class DirichletCharacter:
    """Dirichlet character mod N as a full value table.

    ``values[a]`` is chi(a) for 0 <= a < N (zero at gcd(a, N) > 1).  The
    conductor R and the inducing primitive character are computed on
    demand.  Construct via ``trivial``, ``from_exponents``, or enumerate
    every character with ``all_mod``.
    """

    modulus: int
    values: tuple

    def __post_init__(self):
        if self.modulus < 1 or len(self.values) != self.modulus:
            raise ValueError("character table length must equal the modulus")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def trivial(N=1):
        vals = tuple(1.0 + 0.0j if np.gcd(a, N) == 1 else 0.0 + 0.0j
                     for a in range(N)) if N > 1 else (1.0 + 0.0j,)
        return DirichletCharacter(N, vals)

    @staticmethod
    def from_exponents(N, exponents):
        """Character determined by exponents against the generator
        decomposition of (Z/NZ)^x (one exponent per generator)."""
        gens, orders = _unit_group_generators(N)
        if len(exponents) != len(gens):
            raise ValueError("need %d exponents for modulus %d"
                             % (len(gens), N))
        logs = _discrete_logs(N, gens, orders)
        vals = [0.0 + 0.0j] * N
        if N == 1:
            vals = [1.0 + 0.0j]
        for a, exps in logs.items():
            ang = sum(x * e / o for x, e, o in
                      zip(exponents, exps, orders))
            vals[a % N] = np.exp(2j * np.pi * ang)
        return DirichletCharacter(N, tuple(vals))

    @staticmethod
    def all_mod(N):
        """Every Dirichlet character of modulus N."""
        gens, orders = _unit_group_generators(N)
        from itertools import product as _product
        out = []
        for exps in _product(*[range(o) for o in orders]):
            out.append(DirichletCharacter.from_exponents(N, list(exps)))
        if not out:
            out = [DirichletCharacter.trivial(N)]
        return out

    # -- evaluation --------------------------------------------------------

    def __call__(self, a):
        return self.values[int(a) % self.modulus]

    @property
    def is_principal(self):
        return all(abs(v - 1.0) < 1e-12 for v in self.values
                   if abs(v) > 0.5)

    def conjugate(self):
        return DirichletCharacter(
            self.modulus, tuple(np.conj(v) for v in self.values))

    @property
    def conductor(self):
        N = self.modulus
        for d in divisors(N):
            ok = True
            for a in range(1, N + 1):
                if a % d == 1 % d and np.gcd(a, N) == 1:
                    if abs(self.values[a % N] - 1.0) > 1e-9:
                        ok = False
                        break
            if ok:
                return d
        return N

    @property
    def is_primitive(self):
        return self.conductor == self.modulus

    def primitive_core(self):
        """The primitive character of modulus = conductor inducing this."""
        R = self.conductor
        N = self.modulus
        if R == N:
            return self
        vals = [0.0 + 0.0j] * R
        if R == 1:
            return DirichletCharacter.trivial(1)
        for a in range(R):
            if np.gcd(a, R) != 1:
                continue
            b = a
            while np.gcd(b, N) != 1:
                b += R
            vals[a] = self.values[b % N]
        return DirichletCharacter(R, tuple(vals))


@dataclass(frozen=True)
class SigmaGeneralResult:
    value: complex
    vanishes: bool


def kloosterman(m, n, q):
    """Kloosterman sum S(m, n; q) by direct enumeration of units mod q."""
    m, n, q = int(m), int(n), int(q)
    if q < 1:
        raise ValueError("kloosterman: requires q >= 1")
    if q == 1:
        return 1.0
    total = 0.0
    w = 2.0 * np.pi / q
    for a in range(1, q):
        if np.gcd(a, q) != 1:
            continue
        abar = pow(a, -1, q)
        total += np.cos(w * ((m * a + n * abar) % q))
    return float(total)


def twisted_gauss_sum_direct(chi, q, m):
    """c_{chi|q}(m) = sum over a mod q, gcd(a,q)=1 of chi(a) e(ma/q),
    by direct enumeration (chi's modulus must divide q)."""
    q, m = int(q), int(m)
    if q % chi.modulus != 0:
        raise ValueError("twisted_gauss_sum: modulus of chi must divide q")
    total = 0.0 + 0.0j
    w = 2j * np.pi / q
    for a in range(q):
        if np.gcd(a, q) != 1:
            continue
        v = chi(a)
        if v != 0:
            total += v * np.exp(w * ((m * a) % q))
    return complex(total)


def twisted_gauss_sum(chi, q, m):
    """c_{chi|q}(m), evaluated by the divisor closed form

        c_{chi|q}(m) = tau(chi*) * sum_{d | gcd(m, q/R)}
                       d * chi*(q/(d R)) mu(q/(d R)) conj(chi*)(m/d),

    where chi* is the primitive core of conductor R (the classical
    evaluation of Gauss sums of imprimitive characters; reduces to the
    Ramanujan-sum formula for principal chi).  Falls back to enumeration
    for m = 0 or when R does not divide q.
    """
    q, m = int(q), int(m)
    if q % chi.modulus != 0:
        raise ValueError("twisted_gauss_sum: modulus of chi must divide q")
    star = chi.primitive_core()
    R = star.modulus
    if m == 0 or q % R != 0:
        return twisted_gauss_sum_direct(chi, q, m)
    tau = gauss_sum(star)
    qR = q // R
    star_bar = star.conjugate()
    total = 0.0 + 0.0j
    g = int(np.gcd(abs(m), qR))
    for d in divisors(g):
        c = qR // d
        if np.gcd(c, R) != 1:
            continue
        mu = mobius(c)
        if mu == 0:
            continue
        total += d * star(c) * mu * star_bar(m // d)
    return complex(tau * total)


def gauss_sum(chi_star):
    """tau(chi*) = c_{chi*|R}(1) for primitive chi*; |tau|^2 = R."""
    if not chi_star.is_primitive:
        raise ValueError("gauss_sum: character must be primitive")
    return twisted_gauss_sum_direct(chi_star, chi_star.modulus, 1)


def divisor_sigma_char(u, m, chi):
    """sigma_u(m; chi) = sum_{d | m} d^u chi(d)."""
    m = int(m)
    if m < 1:
        raise ValueError("divisor_sigma_char: requires m >= 1")
    u = complex(u)
    total = 0.0 + 0.0j
    for d in divisors(m):
        v = chi(d)
        if v != 0:
            total += np.exp(u * np.log(d)) * v
    return complex(total)


def _sigma_prime_power(u, p, j, chi):
    """sigma_u(p^j; chi) with the convention that j < 0 gives 0."""
    if j < 0:
        return 0.0 + 0.0j
    total = 0.0 + 0.0j
    for i in range(j + 1):
        v = chi(p ** i)
        if v != 0:
            total += np.exp(u * i * np.log(p)) * v
    return total


def local_factor_PM(u, m, M, chi_star):
    """P_M(u, m; xi*) = prod over p | M, p coprime to R of
    { -p^{-1-u} xi*(p) + (1 - 1/p) sigma_u(p^{ord_p(m) - ord_p(M)};
    conj(xi*)) }."""
    m, M = int(m), int(M)
    if m == 0:
        raise ValueError("local_factor_PM: requires m != 0")
    R = chi_star.modulus
    if M % R != 0:
        raise ValueError("local_factor_PM: conductor must divide M")
    u = complex(u)
    bar = chi_star.conjugate()
    total = 1.0 + 0.0j
    for p, eM in factorize(M):
        if R % p == 0:
            continue
        j = _ord_p(m, p) - eM
        total *= (-np.exp(-(1.0 + u) * np.log(p)) * chi_star(p)
                  + (1.0 - 1.0 / p) * _sigma_prime_power(u, p, j, bar))
    return complex(total)


def sigma_general(s, m, chi_star, M):
    """The level-M twisted divisor coefficient sigma_{1-2s}(m; xi*, M):

        sigma_{1-2s}(m; xi*.1_M) * P_M(2s-1, m; xi*)
            * prod_{p not | M} conj(xi*)(p)^{ord_p m}
            * prod_{p | M} p^{(1-2s) ord_p m},

    when M/(R prod_{p|M, p coprime R} p) divides m; otherwise 0 with the
    ``vanishes`` flag set."""
    m, M = int(m), int(M)
    if m == 0:
        raise ValueError("sigma_general: requires m != 0")
    R = chi_star.modulus
    if M % R != 0:
        raise ValueError("sigma_general: conductor must divide M")
    s = complex(s)
    need = M
    for p, _ in factorize(M):
        if R % p != 0:
            need //= p ** 1
    need //= R
    if need < 1 or m % need != 0:
        return SigmaGeneralResult(0.0 + 0.0j, True)
    u = 1.0 - 2.0 * s
    am = abs(m)
    # sigma_{1-2s}(m; xi* . 1_M): divisors coprime to M, weighted by xi*.
    total = 0.0 + 0.0j
    for d in divisors(am):
        if np.gcd(d, M) != 1:
            continue
        v = chi_star(d) if R > 1 else 1.0
        if v != 0:
            total += np.exp(u * np.log(d)) * v
    value = total * local_factor_PM(2.0 * s - 1.0, m, M, chi_star)
    for p, e in factorize(am):
        if M % p == 0:
            value *= np.exp(u * e * np.log(p))
        else:
            v = np.conj(chi_star(p)) if R > 1 else 1.0
            value *= v ** e
    return SigmaGeneralResult(complex(value), False)


def dirichlet_L(s, chi, omit_primes=()):
    """L(s, chi) by the Hurwitz-zeta expansion
    L(s, chi) = q^{-s} sum_{a=1}^{q} chi(a) zeta(s, a/q), multiplied by
    prod_{p in omit_primes} (1 - chi(p) p^{-s})."""
    s = complex(s)
    q = chi.modulus
    if chi.is_principal and abs(s - 1.0) < 1e-12:
        # The omitted Euler factors cannot cancel the zeta pole for a
        # principal character; always a pole.
        raise ValueError("dirichlet_L: pole at s = 1 for principal chi")
    if q == 1:
        total = hurwitz_zeta(s, 1.0)
    else:
        total = 0.0 + 0.0j
        for a in range(1, q + 1):
            v = chi(a)
            if v != 0:
                total += v * hurwitz_zeta(s, a / q)
        total *= np.exp(-s * np.log(q))
    for p in omit_primes:
        total *= (1.0 - chi(p) * np.exp(-s * np.log(p)))
    return complex(total)


_MU_SIEVE = None


def _mobius_sieve(limit):
    """Array mu[0..limit] of Moebius values, cached across calls."""
    global _MU_SIEVE
    if _MU_SIEVE is not None and _MU_SIEVE.size > limit:
        return _MU_SIEVE
    mu = np.ones(limit + 1, dtype=np.int8)
    primes = np.ones(limit + 1, dtype=bool)
    primes[:2] = False
    for p in range(2, int(limit ** 0.5) + 1):
        if primes[p]:
            primes[p * p::p] = False
    for p in np.nonzero(primes)[0]:
        mu[p::p] *= -1
        sq = int(p) * int(p)
        if sq <= limit:
            mu[sq::sq] = 0
    mu[0] = 0
    _MU_SIEVE = mu
    return mu


def _lemma41_remainder(s, n, chi, M, q_max):
    """Exact value of sum_{q > q_max, M | q} c_{xi|q}(n) / q^{2s}.

    Uses the divisor evaluation of the twisted Ramanujan sums: with
    xi* of conductor R, writing q = R d c over d | n and squarefree c
    coprime to R, the c-sum is a tail of the inverse Dirichlet series
    1/L(2s, xi*), completed by a short sieved head sum.
    """
    s = complex(s)
    star = chi.primitive_core()
    star_bar = star.conjugate()
    R = star.modulus
    tau = gauss_sum(star)
    nn = abs(int(n))
    mu = _mobius_sieve(max(int(q_max), 16))
    total = 0.0 + 0.0j
    for d in divisors(nn):
        m_d = M // int(np.gcd(M, R * d))
        if m_d >= mu.size or mu[m_d] == 0 or np.gcd(m_d, R) != 1:
            continue
        # Full restricted inverse L-series over (f, m_d) = 1.
        ps = [p for p, _ in factorize(m_d)]
        full = 1.0 / dirichlet_L(2.0 * s, star, omit_primes=ps)
        y = int(np.floor(q_max / (R * d * m_d)))
        if y >= 1:
            f = np.arange(1, y + 1)
            keep = (mu[f] != 0) & (np.gcd(f, m_d) == 1)
            f = f[keep]
            chi_f = np.array([star(int(a)) for a in f % R]) if R > 1 \
                else np.ones(f.size)
            head = np.sum(chi_f * mu[f] * np.exp(-2.0 * s * np.log(f)))
        else:
            head = 0.0
        c_tail = full - head
        total += d * star_bar(n // d) * star(m_d) * int(mu[m_d]) \
            * np.exp(-2.0 * s * np.log(R * d * m_d)) * c_tail
    return tau * total


def lemma41_verify(s, n, chi, M, q_max=100000):
    """Both sides of the closed-form evaluation of
    L^{(M)}(2s, xi*) sum_{q >= 1, M | q} c_{xi|q}(n) / q^{2s}.

    Returns (lhs, rhs, tail) where lhs sums the q-series directly up to
    q_max and completes the remainder exactly through the Moebius/L-series
    rearrangement of the tail (`_lemma41_remainder`); tail is an estimate
    of the residual numerical error of that completion.  rhs = R^{-2s}
    xi*(sgn n) tau(xi*) sigma_{1-2s}(n; xi*, M) (zero when the
    divisibility condition fails).
    """
    s = complex(s)
    n = int(n)
    if n == 0:
        raise ValueError("lemma41_verify: requires n != 0")
    if 2.0 * s.real <= 1.0:
        raise ValueError("lemma41_verify: requires Re(2s) > 1")
    N = chi.modulus
    M = int(M)
    if M % N != 0:
        raise ValueError("lemma41_verify: modulus of chi must divide M")
    star = chi.primitive_core()
    R = star.modulus
    omit = [p for p, _ in factorize(M)]
    Lfac = dirichlet_L(2.0 * s, star, omit_primes=omit)
    total = 0.0 + 0.0j
    q = M
    while q <= q_max:
        total += twisted_gauss_sum(chi, q, n) \
            * np.exp(-2.0 * s * np.log(q))
        q += M
    total += _lemma41_remainder(s, n, chi, M, q_max)
    lhs = Lfac * total
    tail = 1e-10 * (1.0 + abs(lhs))
    tau = gauss_sum(star)
    sg = sigma_general(s, n, star, M)
    rhs = np.exp(-2.0 * s * np.log(R)) * star(1 if n > 0 else -1) \
        * tau * sg.value
    return complex(lhs), complex(rhs), float(tail)
