"""Finite posets and meet-semilattices.

Elements are dense integer ids ``0..n-1``; every poset carries a tuple of
unique hashable labels, a read-only boolean order matrix ``leq`` with
``leq[i, j]`` iff ``i <= j``, and the same relation as Python int bitmasks
(``down[x]``: elements below x, ``up[x]``: elements above x), which is what
the combinatorial routines in this package work with.
"""
from dataclasses import dataclass
from functools import cached_property
import itertools

import numpy as np

from cblow import kernels


class PosetError(ValueError):
    """Base class for invalid poset or semilattice input."""


class CycleDetected(PosetError):
    pass


class NotAPoset(PosetError):
    pass


class NoUniqueBottom(PosetError):
    pass


class MeetMissing(PosetError):
    def __init__(self, x, y):
        self.x = x
        self.y = y
        super().__init__(f"lower bounds of {x!s} and {y!s} have no maximum")


def bits(mask):
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(ids):
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def _bool_to_mask(row):
    packed = np.packbits(np.asarray(row, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


class Poset:
    """A finite poset, immutable after construction.

    ``labels`` must be unique; ``leq`` is an n x n boolean matrix that is
    checked to be reflexive, antisymmetric and transitive unless the caller
    passes ``checked=True``.
    """

    def __init__(self, labels, leq, checked=False):
        labels = tuple(labels)
        n = len(labels)
        if len(set(labels)) != n:
            raise NotAPoset("labels are not unique")
        leq = np.array(leq, dtype=bool).reshape(n, n) if n else np.zeros((0, 0), dtype=bool)
        if not checked:
            _check_order(leq)
        leq.flags.writeable = False
        self.labels = labels
        self.n = n
        self.leq = leq
        self.index = {lab: i for i, lab in enumerate(labels)}
        self.down = [_bool_to_mask(leq[:, j]) for j in range(n)]
        self.up = [_bool_to_mask(leq[i, :]) for i in range(n)]
        self._cache = {}

    @classmethod
    def from_covers(cls, labels, cover_pairs):
        """Build from an acyclic relation given as (lower, upper) label pairs."""
        labels = tuple(labels)
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != len(labels):
            raise NotAPoset("labels are not unique")
        n = len(labels)
        adj = np.zeros((n, n), dtype=np.uint8)
        for lo, hi in cover_pairs:
            try:
                adj[index[lo], index[hi]] = 1
            except KeyError as exc:
                raise NotAPoset(f"cover pair mentions unknown label {exc.args[0]!r}") from None
        leq = kernels.transitive_closure(adj).astype(bool)
        both = leq & leq.T
        np.fill_diagonal(both, False)
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise CycleDetected(f"{labels[i]!s} and {labels[j]!s} lie on a cycle")
        return cls(labels, leq, checked=True)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n})"

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash(self.canonical_key())

    def canonical_key(self):
        """Labels (rendered as text) and the order relation between them."""
        names = [str(lab) for lab in self.labels]
        rel = sorted(
            (names[i], names[j]) for i, j in zip(*np.nonzero(self.leq)) if i != j
        )
        return tuple(sorted(names)), tuple(rel)

    def id(self, label):
        return self.index[label]

    def ids(self, labels):
        return [self.index[lab] for lab in labels]

    def le(self, x, y):
        return bool(self.leq[x, y])

    def lt(self, x, y):
        return x != y and bool(self.leq[x, y])

    @cached_property
    def lower_covers(self):
        strict_down = [d & ~(1 << j) for j, d in enumerate(self.down)]
        strict_up = [u & ~(1 << i) for i, u in enumerate(self.up)]
        return tuple(
            tuple(i for i in bits(strict_down[j]) if not strict_up[i] & strict_down[j])
            for j in range(self.n)
        )

    @cached_property
    def upper_covers(self):
        ups = [[] for _ in range(self.n)]
        for j, lows in enumerate(self.lower_covers):
            for i in lows:
                ups[i].append(j)
        return tuple(tuple(u) for u in ups)

    @cached_property
    def height(self):
        """Length of the longest chain ending at each element."""
        h = [0] * self.n
        for j in sorted(range(self.n), key=lambda v: self.down[v].bit_count()):
            lows = self.lower_covers[j]
            if lows:
                h[j] = 1 + max(h[i] for i in lows)
        return tuple(h)

    def covers(self):
        return [(i, j) for j in range(self.n) for i in self.lower_covers[j]]

    def maximal(self, ids):
        m = ids if isinstance(ids, int) else to_mask(ids)
        return [i for i in bits(m) if self.up[i] & m == 1 << i]

    def minimal(self, ids):
        m = ids if isinstance(ids, int) else to_mask(ids)
        return [i for i in bits(m) if self.down[i] & m == 1 << i]

    def subposet(self, ids):
        ids = sorted(ids)
        return Poset([self.labels[i] for i in ids], self.leq[np.ix_(ids, ids)], checked=True)


def _check_order(leq):
    n = leq.shape[0]
    if n == 0:
        return
    if not leq.diagonal().all():
        raise NotAPoset("relation is not reflexive")
    both = leq & leq.T
    if (both.sum() - n) > 0:
        raise NotAPoset("relation is not antisymmetric")
    li = leq.astype(np.int64)
    if ((li @ li > 0) & ~leq).any():
        raise NotAPoset("relation is not transitive")


@dataclass(frozen=True)
class Interval:
    host: "SemiLattice"
    lo: int
    hi: int
    members: frozenset


class SemiLattice(Poset):
    """A finite meet-semilattice.

    Construction verifies that there is a unique minimal element and that
    every pair of elements has a meet; ``MeetMissing`` names the first
    offending pair. Joins are tabulated as well (absent ones as -1).
    """

    def __init__(self, labels, leq, checked=False):
        super().__init__(labels, leq, checked=checked)
        mins = [i for i in range(self.n) if self.down[i] == 1 << i]
        if len(mins) != 1:
            raise NoUniqueBottom(f"poset has {len(mins)} minimal elements")
        self.bottom = mins[0]
        meet, join = kernels.meet_join_tables(self.leq.astype(np.uint8))
        if (meet < 0).any():
            i, j = map(int, np.argwhere(meet < 0)[0])
            raise MeetMissing(self.labels[i], self.labels[j])
        meet.flags.writeable = False
        join.flags.writeable = False
        self.meet_table = meet
        self.join_table = join
        self._meet = meet.tolist()
        self._join = join.tolist()

    def meet(self, x, y):
        return self._meet[x][y]

    def meet_all(self, xs):
        xs = list(xs)
        if not xs:
            raise ValueError("meet of the empty set is undefined")
        w = xs[0]
        for v in xs[1:]:
            w = self._meet[w][v]
        return w

    def join(self, xs):
        """Join of the elements ``xs``; ``None`` if it does not exist.

        The join of the empty set is the bottom element.
        """
        w = self.bottom
        jt = self._join
        for v in xs:
            w = jt[w][v]
            if w < 0:
                return None
        return w

    def join_mask(self, mask):
        w = self.bottom
        jt = self._join
        while mask:
            low = mask & -mask
            w = jt[w][low.bit_length() - 1]
            if w < 0:
                return None
            mask ^= low
        return w

    def atoms(self):
        b = 1 << self.bottom
        return [i for i in range(self.n) if self.down[i] == b | (1 << i) and i != self.bottom]

    @cached_property
    def top(self):
        """The maximum element, or None."""
        full = (1 << self.n) - 1
        for i in range(self.n):
            if self.down[i] == full:
                return i
        return None

    def is_lattice(self):
        return self.top is not None

    def interval(self, lo, hi):
        members = frozenset(bits(self.up[lo] & self.down[hi]))
        return Interval(self, lo, hi, members)

    def lower_interval(self, x):
        """``[0, x]`` as a semilattice with the host's labels."""
        key = ("lower", x)
        if key not in self._cache:
            ids = list(bits(self.down[x]))
            self._cache[key] = SemiLattice(
                [self.labels[i] for i in ids], self.leq[np.ix_(ids, ids)], checked=True
            )
        return self._cache[key]


def build_semilattice(labels, cover_pairs):
    """Semilattice from labels and (lower, upper) label pairs.

    The pairs need not be covers; the transitive closure is taken.
    """
    p = Poset.from_covers(labels, cover_pairs)
    return SemiLattice(p.labels, p.leq, checked=True)


def atoms(L):
    return L.atoms()


def direct_product(*factors):
    """Componentwise order on tuples; a semilattice if every factor is one."""
    labels = [tuple(t) for t in itertools.product(*(f.labels for f in factors))]
    leq = np.ones((1, 1), dtype=np.uint8)
    for f in factors:
        leq = np.kron(leq, f.leq.astype(np.uint8))
    leq = leq.astype(bool)
    if all(isinstance(f, SemiLattice) for f in factors):
        return SemiLattice(labels, leq, checked=True)
    return Poset(labels, leq, checked=True)


@dataclass(frozen=True)
class IsoWitness:
    """An order isomorphism ``source -> target``; ``mapping[i]`` is the image of i."""

    source: Poset
    target: Poset
    mapping: tuple

    def __call__(self, x):
        return self.mapping[x]

    def is_valid(self):
        n = self.source.n
        if self.target.n != n or len(self.mapping) != n:
            return False
        m = np.asarray(self.mapping, dtype=np.int64)
        if n and (sorted(m.tolist()) != list(range(n))):
            return False
        if n == 0:
            return True
        return bool((self.target.leq[np.ix_(m, m)] == self.source.leq).all())

    def inverse(self):
        inv = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return IsoWitness(self.target, self.source, tuple(inv))

    def compose(self, other):
        """``other`` after ``self``: source of self -> target of other."""
        return IsoWitness(self.source, other.target, tuple(other.mapping[j] for j in self.mapping))

    def label_map(self):
        return {
            self.source.labels[i]: self.target.labels[j] for i, j in enumerate(self.mapping)
        }


def _refined_colors(P, Q):
    """Joint colour refinement of the Hasse diagrams of P and Q."""
    def initial(X):
        return [
            (X.height[i], X.down[i].bit_count(), X.up[i].bit_count(),
             len(X.lower_covers[i]), len(X.upper_covers[i]))
            for i in range(X.n)
        ]

    def relabel(cp, cq):
        palette = {c: k for k, c in enumerate(sorted(set(cp) | set(cq)))}
        return [palette[c] for c in cp], [palette[c] for c in cq]

    cp, cq = relabel(initial(P), initial(Q))
    classes = len(set(cp) | set(cq))
    while True:
        np_ = [
            (cp[i], tuple(sorted(cp[j] for j in P.lower_covers[i])),
             tuple(sorted(cp[j] for j in P.upper_covers[i])))
            for i in range(P.n)
        ]
        nq = [
            (cq[i], tuple(sorted(cq[j] for j in Q.lower_covers[i])),
             tuple(sorted(cq[j] for j in Q.upper_covers[i])))
            for i in range(Q.n)
        ]
        cp, cq = relabel(np_, nq)
        k = len(set(cp) | set(cq))
        if k == classes:
            return cp, cq
        classes = k


def is_isomorphic(P, Q):
    """An order isomorphism P -> Q, or None.

    Backtracking over elements of P by increasing height, restricted to
    candidates with the same refined invariants; deterministic.
    """
    if P.n != Q.n:
        return None
    if P.n == 0:
        return IsoWitness(P, Q, ())
    cp, cq = _refined_colors(P, Q)
    if sorted(cp) != sorted(cq):
        return None
    cand = (np.asarray(cp)[:, None] == np.asarray(cq)[None, :]).astype(np.uint8)
    order = np.array(sorted(range(P.n), key=lambda i: (P.height[i], i)), dtype=np.int32)
    m = kernels.find_isomorphism(
        P.leq.astype(np.uint8), Q.leq.astype(np.uint8), order, cand
    )
    if m is None:
        return None
    return IsoWitness(P, Q, tuple(int(v) for v in m))


def _reducing_pair(L, x):
    """Elements (a, b) with [0,x] = [0,a] x [0,b] via the join map, or None."""
    dx = L.down[x]
    size = dx.bit_count()
    if size < 4:
        return None
    inner = [v for v in bits(dx) if v != x and v != L.bottom]
    for i, a in enumerate(inner):
        sa = L.down[a].bit_count()
        if size % sa:
            continue
        for b in inner[i + 1:]:
            if sa * L.down[b].bit_count() != size:
                continue
            if L._meet[a][b] != L.bottom or L._join[a][b] != x:
                continue
            fa, fb = list(bits(L.down[a])), list(bits(L.down[b]))
            if kernels.lattice_join_map_is_iso(L, [fa, fb], [a, b], size):
                return a, b
    return None


def is_irreducible(L, x):
    """True iff ``[0, x]`` is not a product of two posets with >= 2 elements."""
    return _reducing_pair(L, x) is None


def irreducibles(L):
    """Sorted ids x with [0, x] irreducible; always includes the bottom and atoms."""
    if "irreducibles" not in L._cache:
        L._cache["irreducibles"] = tuple(x for x in range(L.n) if is_irreducible(L, x))
    return L._cache["irreducibles"]


def elementary_divisors(L, x):
    """Maximal irreducible elements below x (sorted ids)."""
    irr = to_mask(irreducibles(L))
    return tuple(sorted(L.maximal(irr & L.down[x])))


def finest_factorization(L, x):
    """Elementary divisors of x and the isomorphism from the product of their
    lower intervals onto ``[0, x]`` (tuples map to the join of coordinates)."""
    divisors = elementary_divisors(L, x)
    factors = [L.lower_interval(y) for y in divisors]
    prod = direct_product(*factors)
    target = L.lower_interval(x)
    mapping = []
    for labels in prod.labels:
        w = L.join(L.index[lab] for lab in labels)
        mapping.append(target.index[L.labels[w]])
    witness = IsoWitness(prod, target, tuple(mapping))
    if not witness.is_valid():
        raise RuntimeError(f"finest decomposition of {L.labels[x]!s} failed to verify")
    return divisors, witness


def linear_extensions_decreasing(L, G, first_only=False):
    """Yield orderings of G in which every element precedes all elements
    strictly below it, in lexicographic order of ids."""
    G = sorted(set(G))
    if not G:
        yield ()
        return
    up = L.up
    order = []

    def rec(remaining):
        if not remaining:
            yield tuple(order)
            return
        for c in bits(remaining):
            if up[c] & remaining == 1 << c:
                order.append(c)
                yield from rec(remaining & ~(1 << c))
                order.pop()

    gen = rec(to_mask(G))
    if first_only:
        yield next(gen)
    else:
        yield from gen


def non_boolean_interval(P):
    """First element x whose lower interval is not boolean, or None.

    [0, x] is boolean when y -> (atoms below y) is an order isomorphism from
    [0, x] onto all subsets of the atoms below x.
    """
    if P.n == 0:
        return None
    bottom_mask = [i for i in range(P.n) if P.down[i] == 1 << i]
    atom_mask = 0
    for i in range(P.n):
        if len(P.lower_covers[i]) == 1 and P.lower_covers[i][0] in bottom_mask:
            atom_mask |= 1 << i
    sig = [P.down[i] & atom_mask for i in range(P.n)]
    for x in range(P.n):
        below = list(bits(P.down[x]))
        k = sig[x].bit_count()
        if len(below) != 1 << k:
            return x
        seen = {sig[y] for y in below}
        if len(seen) != len(below):
            return x
        for y in below:
            for z in below:
                if bool(P.leq[y, z]) != (sig[y] & ~sig[z] == 0):
                    return x
    return None
