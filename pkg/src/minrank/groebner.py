"""Buchberger's algorithm over Q and the ideal-triviality test.

The engine works on an internal representation: a polynomial is a dict
from *encoded* monomials to Python ints.  Encoded monomials compare with
plain tuple comparison in the monomial order, and multiply by elementwise
addition:

* grevlex: ``(deg, -e[n-1], ..., -e[0])``
* lex:     ``(0, e[0], ..., e[n-1])``

Coefficients are kept integral by fraction-free (pseudo) reduction and each
new basis element is made primitive.  Pairs are chosen by the normal
strategy (smallest lcm first) and pruned with the Gebauer-Moeller update,
which covers Buchberger's coprime and chain criteria.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from operator import add, sub
from typing import Iterable, Sequence

from .poly import Polynomial, PolyRing, divides, lcm, mono_div

__all__ = [
    "GroebnerBasis",
    "GroebnerLimitExceeded",
    "Limits",
    "PolySystem",
    "buchberger",
    "is_groebner",
    "is_reduced",
    "is_trivial",
    "reduce",
    "s_polynomial",
]


@dataclass(frozen=True)
class PolySystem:
    """Generators of an ideal in a common ring (the ring fixes the order)."""

    generators: tuple[Polynomial, ...]
    ring: PolyRing

    def __post_init__(self) -> None:
        for g in self.generators:
            if g.ring != self.ring:
                raise ValueError("all generators must live in the system's ring")
            if g.is_zero():
                raise ValueError("zero generator in a polynomial system")

    @classmethod
    def of(cls, polys: Iterable[Polynomial]) -> "PolySystem":
        polys = tuple(polys)
        if not polys:
            raise ValueError("empty polynomial system")
        return cls(polys, polys[0].ring)

    def __len__(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class Limits:
    """Resource caps; ``None`` disables a cap."""

    max_pairs: int | None = 200_000
    max_terms: int | None = 50_000
    max_coeff_bits: int | None = 50_000
    max_seconds: float | None = None


class GroebnerLimitExceeded(RuntimeError):
    """A resource cap was hit; the outcome is undecided."""

    def __init__(self, reason: str, stats: dict):
        super().__init__(f"Groebner computation aborted: {reason}")
        self.reason = reason
        self.stats = stats


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis, sorted by increasing leading monomial."""

    elements: tuple[Polynomial, ...]
    ring: PolyRing
    stats: dict = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def contains_one(self) -> bool:
        return is_trivial(self)


def is_trivial(gb: GroebnerBasis | Sequence[Polynomial]) -> bool:
    """True iff the reduced basis is ``{1}``, i.e. the system has no solution over C."""
    elements = gb.elements if isinstance(gb, GroebnerBasis) else tuple(gb)
    return len(elements) == 1 and elements[0].is_constant() and not elements[0].is_zero()


# -- rational reference routines ------------------------------------------------

def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    if f.ring != g.ring:
        raise ValueError("S-polynomial of polynomials from different rings")
    cf, mf = f.leading_term()
    cg, mg = g.leading_term()
    L = lcm(mf, mg)
    return f.mul_term(Fraction(1) / cf, mono_div(L, mf)) - g.mul_term(Fraction(1) / cg, mono_div(L, mg))


def reduce(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Remainder of multivariate division of ``f`` by ``basis`` over Q.

    Divisors are tried in list order; the result has no monomial divisible
    by a leading monomial of the basis.
    """
    if any(b.is_zero() for b in basis):
        raise ValueError("cannot divide by the zero polynomial")
    ring = f.ring
    key = ring.sort_key
    leads = [(b.leading_term(), b) for b in basis]
    h = f.as_dict()
    remainder = {}
    while h:
        m = max(h, key=key)
        c = h.pop(m)
        for (bc, bm), b in leads:
            if divides(bm, m):
                q = mono_div(m, bm)
                factor = Fraction(c) / bc
                for mm, cc in b.terms[1:]:
                    t = tuple(a + e for a, e in zip(mm, q))
                    v = h.get(t, 0) - factor * cc
                    if v:
                        h[t] = v
                    else:
                        h.pop(t, None)
                break
        else:
            remainder[m] = c
    return Polynomial(ring, remainder)


def is_groebner(polys: Sequence[Polynomial]) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    polys = [p for p in polys if not p.is_zero()]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if not reduce(s_polynomial(polys[i], polys[j]), polys).is_zero():
                return False
    return True


def is_reduced(polys: Sequence[Polynomial]) -> bool:
    """No monomial of any element is divisible by another element's leading
    monomial, and every element is normalized."""
    for i, p in enumerate(polys):
        if p.is_zero() or not p.is_normalized():
            return False
        for j, q in enumerate(polys):
            if i != j and any(divides(q.leading_monomial, m) for m, _ in p.terms):
                return False
    return True


# -- fast internal engine -------------------------------------------------------

class _Codec:
    """Encoding of exponent tuples so that tuple order is the monomial order."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.grevlex = ring.order.scheme == "grevlex"

    def encode(self, m: tuple[int, ...]) -> tuple[int, ...]:
        if self.grevlex:
            return (sum(m),) + tuple(-e for e in reversed(m))
        return (0,) + m

    def decode(self, k: tuple[int, ...]) -> tuple[int, ...]:
        if self.grevlex:
            return tuple(-e for e in reversed(k[1:]))
        return k[1:]

    def divides(self, a, b) -> bool:
        if self.grevlex:
            if a[0] > b[0]:
                return False
            return all(x >= y for x, y in zip(a[1:], b[1:]))
        return all(x <= y for x, y in zip(a[1:], b[1:]))

    def lcm(self, a, b):
        if self.grevlex:
            body = tuple(map(min, a[1:], b[1:]))
            return (-sum(body),) + body
        return (0,) + tuple(map(max, a[1:], b[1:]))

    def coprime(self, a, b) -> bool:
        return not any(x and y for x, y in zip(a[1:], b[1:]))

    def support(self, a) -> int:
        mask = 0
        for i, e in enumerate(a[1:]):
            if e:
                mask |= 1 << i
        return mask


class _Elem:
    __slots__ = ("lm", "lc", "terms", "mask")

    def __init__(self, terms: dict, codec: _Codec):
        lm = max(terms)
        self.lm = lm
        self.lc = terms[lm]
        self.terms = terms
        self.mask = codec.support(lm)


def _primitive(terms: dict) -> dict:
    g = 0
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            break
    lead = terms[max(terms)]
    if lead < 0:
        g = -g
    if g != 1:
        terms = {m: c // g for m, c in terms.items()}
    return terms


class _Engine:
    def __init__(self, ring: PolyRing, limits: Limits):
        self.ring = ring
        self.codec = _Codec(ring)
        self.limits = limits
        self.started = time.perf_counter()
        self.stats = {
            "pairs_considered": 0,
            "pairs_reduced": 0,
            "zero_reductions": 0,
            "basis_peak": 0,
            "max_terms": 0,
            "max_coeff_bits": 0,
        }

    def to_internal(self, p: Polynomial) -> dict:
        enc = self.codec.encode
        den = 1
        for _, c in p.terms:
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
        return {enc(m): int(c * den) for m, c in p.terms}

    def to_polynomial(self, terms: dict) -> Polynomial:
        dec = self.codec.decode
        items = sorted(terms.items(), reverse=True)
        return Polynomial._from_sorted(self.ring, tuple((dec(m), c) for m, c in items))

    def _check_limits(self, terms: dict) -> None:
        lim = self.limits
        st = self.stats
        n = len(terms)
        if n > st["max_terms"]:
            st["max_terms"] = n
        if lim.max_terms is not None and n > lim.max_terms:
            raise GroebnerLimitExceeded(f"polynomial with {n} terms", dict(st))
        bits = max(abs(c).bit_length() for c in terms.values())
        if bits > st["max_coeff_bits"]:
            st["max_coeff_bits"] = bits
        if lim.max_coeff_bits is not None and bits > lim.max_coeff_bits:
            raise GroebnerLimitExceeded(f"coefficient of {bits} bits", dict(st))
        if lim.max_seconds is not None and time.perf_counter() - self.started > lim.max_seconds:
            raise GroebnerLimitExceeded(f"time limit of {lim.max_seconds}s", dict(st))

    def reduce(self, h: dict, basis: list[_Elem], full: bool = True) -> dict:
        """Fraction-free normal form of ``h``; the result is a scalar multiple
        of the rational normal form."""
        codec = self.codec
        grevlex = codec.grevlex
        h = dict(h)
        rem: dict = {}
        steps = 0
        while h:
            m = max(h)
            mmask = 0
            body = m[1:]
            for i, e in enumerate(body):
                if e:
                    mmask |= 1 << i
            div = None
            for g in basis:
                if g.mask & ~mmask:
                    continue
                glm = g.lm
                if grevlex:
                    if glm[0] <= m[0] and all(a >= b for a, b in zip(glm[1:], body)):
                        div = g
                        break
                elif all(a <= b for a, b in zip(glm[1:], body)):
                    div = g
                    break
            c = h.pop(m)
            if div is None:
                rem[m] = c
                if not full:
                    rem.update(h)
                    return rem
                continue
            q = tuple(map(sub, m, div.lm))
            d = gcd(c, div.lc)
            a = div.lc // d
            b = c // d
            if a != 1:
                for k in h:
                    h[k] *= a
                for k in rem:
                    rem[k] *= a
            lm = div.lm
            for gm, gc in div.terms.items():
                if gm == lm:
                    continue
                key = tuple(map(add, gm, q))
                v = h.get(key, 0) - b * gc
                if v:
                    h[key] = v
                else:
                    h.pop(key, None)
            steps += 1
            if steps % 64 == 0 and h:
                self._check_limits(h)
                g = 0
                for v in h.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    for v in rem.values():
                        g = gcd(g, v)
                        if g == 1:
                            break
                    if g > 1:
                        h = {k: v // g for k, v in h.items()}
                        rem = {k: v // g for k, v in rem.items()}
        return rem

    def spoly(self, f: _Elem, g: _Elem) -> dict:
        L = self.codec.lcm(f.lm, g.lm)
        qf = tuple(map(sub, L, f.lm))
        qg = tuple(map(sub, L, g.lm))
        d = gcd(f.lc, g.lc)
        af = g.lc // d
        ag = f.lc // d
        out: dict = {}
        for m, c in f.terms.items():
            if m != f.lm:
                out[tuple(map(add, m, qf))] = af * c
        for m, c in g.terms.items():
            if m == g.lm:
                continue
            key = tuple(map(add, m, qg))
            v = out.get(key, 0) - ag * c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return out

    def interreduce(self, polys: list[dict]) -> list[dict]:
        """Autoreduce the input until no element is reducible by another."""
        current = [p for p in polys if p]
        changed = True
        while changed:
            changed = False
            current.sort(key=lambda p: max(p))
            out: list[dict] = []
            for i, p in enumerate(current):
                others = [_Elem(q, self.codec) for j, q in enumerate(current) if j != i and q]
                r = self.reduce(p, others)
                if r != p:
                    changed = True
                if r:
                    r = _primitive(r)
                    if len(r) == 1 and not any(next(iter(r))[1:]):
                        return [r]
                current[i] = r
                if r:
                    out.append(r)
            # dedupe identical normalized elements
            seen = set()
            uniq = []
            for p in out:
                key = tuple(sorted(p.items()))
                if key not in seen:
                    seen.add(key)
                    uniq.append(p)
            current = uniq
        return current

    def run(self, polys: list[dict]) -> list[dict]:
        codec = self.codec
        lim = self.limits
        st = self.stats
        F = self.interreduce([_primitive(p) for p in polys if p])
        if any(len(p) == 1 and not any(next(iter(p))[1:]) for p in F):
            return [{codec.encode(self.ring.one_monomial): 1}]

        G: list[_Elem] = []
        active: list[bool] = []
        pairs: dict[tuple[int, int], tuple] = {}
        heap: list = []

        def update(h: _Elem) -> None:
            hi = len(G)
            hlm = h.lm
            cand = [
                (i, codec.lcm(G[i].lm, hlm), codec.coprime(G[i].lm, hlm))
                for i in range(len(G)) if active[i]
            ]
            keep = []
            for idx, (i, L, cop) in enumerate(cand):
                if cop:
                    keep.append((i, L, cop))
                    continue
                redundant = any(
                    codec.divides(L2, L) for (_, L2, _) in cand[idx + 1:]
                ) or any(codec.divides(L2, L) for (_, L2, _) in keep)
                if not redundant:
                    keep.append((i, L, cop))
            for key, L in list(pairs.items()):
                i, j = key
                if codec.divides(hlm, L):
                    if L != codec.lcm(G[i].lm, hlm) and L != codec.lcm(G[j].lm, hlm):
                        del pairs[key]
            for i, L, cop in keep:
                if not cop:
                    pairs[(i, hi)] = L
                    heapq.heappush(heap, (L, i, hi))
            for i in range(len(G)):
                if active[i] and codec.divides(hlm, G[i].lm):
                    active[i] = False
            G.append(h)
            active.append(True)

        for p in sorted(F, key=max):
            update(_Elem(p, codec))

        while heap:
            L, i, j = heapq.heappop(heap)
            if pairs.get((i, j)) != L:
                continue
            del pairs[(i, j)]
            st["pairs_considered"] += 1
            if lim.max_pairs is not None and st["pairs_considered"] > lim.max_pairs:
                raise GroebnerLimitExceeded(f"more than {lim.max_pairs} pairs", dict(st))
            s = self.spoly(G[i], G[j])
            basis = [g for g, a in zip(G, active) if a]
            h = self.reduce(s, basis) if s else {}
            st["pairs_reduced"] += 1
            if not h:
                st["zero_reductions"] += 1
                continue
            h = _primitive(h)
            self._check_limits(h)
            if len(h) == 1 and not any(next(iter(h))[1:]):
                return [{codec.encode(self.ring.one_monomial): 1}]
            update(_Elem(h, codec))
            st["basis_peak"] = max(st["basis_peak"], sum(active))

        # minimal basis, then tail-reduce each element by the others
        leads = sorted((g for g, a in zip(G, active) if a), key=lambda g: g.lm)
        minimal: list[_Elem] = []
        for g in leads:
            if not any(codec.divides(k.lm, g.lm) for k in minimal):
                minimal.append(g)
        reduced = []
        for idx, g in enumerate(minimal):
            others = minimal[:idx] + minimal[idx + 1:]
            reduced.append(_primitive(self.reduce(g.terms, others)))
        return reduced


def buchberger(
    system: PolySystem | Iterable[Polynomial],
    limits: Limits | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``system``.

    Raises :class:`GroebnerLimitExceeded` if a resource cap is hit.
    """
    if not isinstance(system, PolySystem):
        system = PolySystem.of(system)
    engine = _Engine(system.ring, limits or Limits())
    internal = [engine.to_internal(p) for p in system.generators]
    result = engine.run(internal)
    elements = sorted((engine.to_polynomial(t) for t in result), key=lambda p: system.ring.sort_key(p.leading_monomial))
    engine.stats["elapsed_s"] = time.perf_counter() - engine.started
    return GroebnerBasis(tuple(elements), system.ring, engine.stats)
