"""Finite groupoids with explicit tables, functors, equivalence, cardinality.

Objects and morphisms are integer indices.  Composition is written
``compose2(g, f)`` for "f first, then g", defined exactly when
``dst(f) == src(g)``.  Everything is immutable after construction; large
derived groupoids may carry a lazily-memoised composition rule instead of a
fully materialised table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .config import Caps, DEFAULT_CAPS, CapExceeded


class GroupoidError(ValueError):
    pass


class FiniteGroupoid:
    """A finite groupoid given by source/target, identity, composition and
    inverse tables.

    ``compose`` may be a dict ``{(g, f): gf}`` or a callable ``(g, f) -> gf``;
    callables are memoised.  ``origin`` optionally records how the groupoid
    was built (``("coproduct", G, H)`` etc.) so that block structure stays
    available on the nose.
    """

    def __init__(self, object_count, morphisms, identity_of, compose,
                 inverse_of, object_labels=None, morphism_labels=None,
                 origin=None):
        self.object_count = int(object_count)
        self.morphisms = tuple((int(s), int(t)) for s, t in morphisms)
        self.identity_of = tuple(identity_of)
        self.inverse_of = tuple(inverse_of)
        if callable(compose):
            self._compose_fn = compose
            self._compose_memo = {}
        else:
            self._compose_fn = None
            self._compose_memo = dict(compose)
        self.object_labels = None if object_labels is None else tuple(object_labels)
        self.morphism_labels = None if morphism_labels is None else tuple(morphism_labels)
        self.origin = origin
        self._obj_lookup = None
        self._mor_lookup = None
        self._hom = {}
        self._out = None
        self._in = None

    # -- basic accessors -------------------------------------------------

    @property
    def morphism_count(self):
        return len(self.morphisms)

    def src(self, m):
        return self.morphisms[m][0]

    def dst(self, m):
        return self.morphisms[m][1]

    def identity(self, x):
        return self.identity_of[x]

    def inverse(self, m):
        return self.inverse_of[m]

    def is_identity(self, m):
        s, t = self.morphisms[m]
        return s == t and self.identity_of[s] == m

    def compose2(self, g, f):
        """Composite g∘f (f first).  Raises GroupoidError if not composable."""
        key = (g, f)
        got = self._compose_memo.get(key)
        if got is not None:
            return got
        if self.dst(f) != self.src(g):
            raise GroupoidError(f"morphisms {g} and {f} are not composable")
        if self._compose_fn is None:
            raise GroupoidError(f"composite of ({g}, {f}) missing from table")
        val = self._compose_fn(g, f)
        self._compose_memo[key] = val
        return val

    def has_composite(self, g, f):
        return (g, f) in self._compose_memo or (
            self._compose_fn is not None and self.dst(f) == self.src(g))

    def compose_pairs(self):
        """All composable pairs (g, f), in index order."""
        by_src = self.out_of
        for f in range(len(self.morphisms)):
            for g in by_src[self.dst(f)]:
                yield (g, f)

    @property
    def out_of(self):
        if self._out is None:
            out = [[] for _ in range(self.object_count)]
            for m, (s, _t) in enumerate(self.morphisms):
                out[s].append(m)
            self._out = [tuple(ms) for ms in out]
        return self._out

    @property
    def into(self):
        if self._in is None:
            inn = [[] for _ in range(self.object_count)]
            for m, (_s, t) in enumerate(self.morphisms):
                inn[t].append(m)
            self._in = [tuple(ms) for ms in inn]
        return self._in

    def hom(self, x, y):
        key = (x, y)
        got = self._hom.get(key)
        if got is None:
            got = tuple(m for m in self.out_of[x] if self.dst(m) == y)
            self._hom[key] = got
        return got

    # -- label lookup -----------------------------------------------------

    def obj_index(self, label):
        if self._obj_lookup is None:
            if self.object_labels is None:
                raise GroupoidError("groupoid carries no object labels")
            self._obj_lookup = {lab: i for i, lab in enumerate(self.object_labels)}
        return self._obj_lookup[label]

    def mor_index(self, label):
        if self._mor_lookup is None:
            if self.morphism_labels is None:
                raise GroupoidError("groupoid carries no morphism labels")
            self._mor_lookup = {lab: i for i, lab in enumerate(self.morphism_labels)}
        return self._mor_lookup[label]

    # -- structural equality ----------------------------------------------

    def table_items(self):
        return tuple((g, f, self.compose2(g, f)) for g, f in self.compose_pairs())

    def __eq__(self, other):
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        if (self.object_count != other.object_count
                or self.morphisms != other.morphisms
                or self.identity_of != other.identity_of
                or self.inverse_of != other.inverse_of):
            return False
        return all(self.compose2(g, f) == other.compose2(g, f)
                   for g, f in self.compose_pairs())

    def __hash__(self):
        return hash((self.object_count, self.morphisms, self.identity_of,
                     self.inverse_of))

    def __repr__(self):
        return (f"FiniteGroupoid(objects={self.object_count}, "
                f"morphisms={len(self.morphisms)})")


class GroupoidFunctor:
    """A functor between finite groupoids: an object map and a morphism map."""

    def __init__(self, source, target, object_map, morphism_map):
        self.source = source
        self.target = target
        self.object_map = tuple(object_map)
        self.morphism_map = tuple(morphism_map)

    def on_obj(self, x):
        return self.object_map[x]

    def on_mor(self, m):
        return self.morphism_map[m]

    def then(self, other):
        """other ∘ self."""
        if other.source is not self.target and other.source != self.target:
            raise GroupoidError("functors are not composable")
        return GroupoidFunctor(
            self.source, other.target,
            tuple(other.object_map[x] for x in self.object_map),
            tuple(other.morphism_map[m] for m in self.morphism_map))

    def __eq__(self, other):
        if not isinstance(other, GroupoidFunctor):
            return NotImplemented
        return (self.object_map == other.object_map
                and self.morphism_map == other.morphism_map
                and self.source == other.source
                and self.target == other.target)

    def __hash__(self):
        return hash((self.object_map, self.morphism_map))

    def __repr__(self):
        return f"GroupoidFunctor({self.object_map!r})"


def identity_functor(G):
    return GroupoidFunctor(G, G, range(G.object_count),
                           range(G.morphism_count))


# -- validation ------------------------------------------------------------


@dataclass
class ValidationReport:
    ok: bool
    failures: list = field(default_factory=list)

    @property
    def first(self):
        return self.failures[0] if self.failures else None

    def __bool__(self):
        return self.ok


def validate_groupoid(G):
    """Exhaustively check the groupoid laws; violations are reported, not raised."""
    fails = []
    n, mors = G.object_count, G.morphisms
    if len(G.identity_of) != n:
        fails.append(f"identity table has {len(G.identity_of)} entries for {n} objects")
        return ValidationReport(False, fails)
    if len(G.inverse_of) != len(mors):
        fails.append("inverse table length differs from morphism count")
        return ValidationReport(False, fails)
    for m, (s, t) in enumerate(mors):
        if not (0 <= s < n and 0 <= t < n):
            fails.append(f"morphism {m} has endpoints out of range")
    for x in range(n):
        e = G.identity_of[x]
        if not (0 <= e < len(mors)) or G.morphisms[e] != (x, x):
            fails.append(f"identity of object {x} is not an endomorphism at {x}")
    if fails:
        return ValidationReport(False, fails)

    for g, f in G.compose_pairs():
        try:
            gf = G.compose2(g, f)
        except GroupoidError:
            fails.append(f"composite of ({g}, {f}) undefined though composable")
            continue
        if not (0 <= gf < len(mors)):
            fails.append(f"composite of ({g}, {f}) out of range")
        elif G.morphisms[gf] != (G.src(f), G.dst(g)):
            fails.append(f"composite of ({g}, {f}) has wrong endpoints")
    if fails:
        return ValidationReport(False, fails)

    for f in range(len(mors)):
        s, t = mors[f]
        if G.compose2(G.identity_of[t], f) != f:
            fails.append(f"left unit law violated at morphism {f}")
        if G.compose2(f, G.identity_of[s]) != f:
            fails.append(f"right unit law violated at morphism {f}")
        i = G.inverse_of[f]
        if G.morphisms[i] != (t, s):
            fails.append(f"inverse of morphism {f} has wrong endpoints")
        else:
            if G.compose2(i, f) != G.identity_of[s] or G.compose2(f, i) != G.identity_of[t]:
                fails.append(f"inverse law violated at morphism {f}")
    if fails:
        return ValidationReport(False, fails)

    out = G.out_of
    for f in range(len(mors)):
        for g in out[G.dst(f)]:
            gf = G.compose2(g, f)
            for h in out[G.dst(g)]:
                if G.compose2(G.compose2(h, g), f) != G.compose2(h, gf):
                    fails.append(f"associativity violated at triple ({h}, {g}, {f})")
                    return ValidationReport(False, fails)
    return ValidationReport(not fails, fails)


def validate_functor(F):
    """Check that F preserves endpoints, identities and composition."""
    fails = []
    G, H = F.source, F.target
    if len(F.object_map) != G.object_count or len(F.morphism_map) != G.morphism_count:
        return ValidationReport(False, ["functor map lengths do not match the source"])
    for x in range(G.object_count):
        if not 0 <= F.object_map[x] < H.object_count:
            fails.append(f"object image of {x} out of range")
    for m in range(G.morphism_count):
        fm = F.morphism_map[m]
        if not 0 <= fm < H.morphism_count:
            fails.append(f"morphism image of {m} out of range")
            continue
        if H.morphisms[fm] != (F.object_map[G.src(m)], F.object_map[G.dst(m)]):
            fails.append(f"functor does not preserve endpoints of morphism {m}")
    if fails:
        return ValidationReport(False, fails)
    for x in range(G.object_count):
        if F.morphism_map[G.identity_of[x]] != H.identity_of[F.object_map[x]]:
            fails.append(f"functor does not preserve the identity at object {x}")
    for g, f in G.compose_pairs():
        if F.morphism_map[G.compose2(g, f)] != H.compose2(F.morphism_map[g], F.morphism_map[f]):
            fails.append(f"functor does not preserve the composite ({g}, {f})")
            return ValidationReport(False, fails)
    return ValidationReport(not fails, fails)


# -- builders ---------------------------------------------------------------


def discrete(n):
    """The groupoid with n objects and identity morphisms only."""
    if n < 0:
        raise GroupoidError("discrete groupoid needs n >= 0")
    mors = [(x, x) for x in range(n)]
    comp = {(x, x): x for x in range(n)}
    return FiniteGroupoid(n, mors, range(n), comp, range(n),
                          object_labels=range(n),
                          morphism_labels=range(n),
                          origin=("discrete", n))


def check_group_table(table):
    """Return the identity element of a group multiplication table, or raise
    GroupoidError naming the failing axiom."""
    n = len(table)
    if n == 0:
        raise GroupoidError("group table is empty")
    for row in table:
        if len(row) != n or any(not (0 <= v < n) for v in row):
            raise GroupoidError("group table is not closed (entry out of range)")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise GroupoidError(
                f"group table is not associative at ({a}, {b}, {c})")
    unit = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            unit = e
            break
    if unit is None:
        raise GroupoidError("group table has no identity element")
    for a in range(n):
        if not any(table[a][b] == unit and table[b][a] == unit for b in range(n)):
            raise GroupoidError(f"group table has no inverse for element {a}")
    return unit


def deloop(table):
    """One-object groupoid whose morphisms are the elements of the group
    given by ``table`` (``table[a][b]`` = a·b, used as a∘b)."""
    table = [list(row) for row in table]
    unit = check_group_table(table)
    n = len(table)
    inv = []
    for a in range(n):
        inv.append(next(b for b in range(n)
                        if table[a][b] == unit and table[b][a] == unit))
    comp = {(a, b): table[a][b] for a in range(n) for b in range(n)}
    return FiniteGroupoid(1, [(0, 0)] * n, [unit], comp, inv,
                          object_labels=(0,),
                          morphism_labels=range(n),
                          origin=("deloop", tuple(tuple(r) for r in table)))


def coproduct(G, H):
    """Disjoint union, left block first; objects and morphisms renumbered
    with the G block before the H block."""
    no, nm = G.object_count, G.morphism_count
    mors = list(G.morphisms) + [(s + no, t + no) for s, t in H.morphisms]
    idents = list(G.identity_of) + [m + nm for m in H.identity_of]
    invs = list(G.inverse_of) + [m + nm for m in H.inverse_of]

    def comp(g, f):
        if g < nm:
            return G.compose2(g, f)
        return H.compose2(g - nm, f - nm) + nm

    labels_o = [(0, x) for x in range(no)] + [(1, x) for x in range(H.object_count)]
    labels_m = [(0, m) for m in range(nm)] + [(1, m) for m in range(H.morphism_count)]
    return FiniteGroupoid(no + H.object_count, mors, idents, comp, invs,
                          object_labels=labels_o, morphism_labels=labels_m,
                          origin=("coproduct", G, H))


def product(G, H):
    """Product groupoid on lexicographic pairs of objects and morphisms."""
    nh, mh = H.object_count, H.morphism_count

    def oi(x, y):
        return x * nh + y

    def mi(f, g):
        return f * mh + g

    mors = []
    for f in range(G.morphism_count):
        fs, ft = G.morphisms[f]
        for g in range(mh):
            gs, gt = H.morphisms[g]
            mors.append((oi(fs, gs), oi(ft, gt)))
    idents = [mi(G.identity_of[x], H.identity_of[y])
              for x in range(G.object_count) for y in range(nh)]
    invs = [mi(G.inverse_of[m // mh], H.inverse_of[m % mh])
            for m in range(G.morphism_count * mh)]

    def comp(b, a):
        return mi(G.compose2(b // mh, a // mh), H.compose2(b % mh, a % mh))

    labels_o = [(x, y) for x in range(G.object_count) for y in range(nh)]
    labels_m = [(f, g) for f in range(G.morphism_count) for g in range(mh)]
    return FiniteGroupoid(G.object_count * nh, mors, idents, comp, invs,
                          object_labels=labels_o, morphism_labels=labels_m,
                          origin=("product", G, H))


def build_groupoid(spec):
    """Dispatch on a builder spec: ("discrete", n), ("deloop", table),
    ("coproduct", G, H) or ("product", G, H)."""
    kind = spec[0]
    if kind == "discrete":
        return discrete(spec[1])
    if kind == "deloop":
        return deloop(spec[1])
    if kind == "coproduct":
        return coproduct(spec[1], spec[2])
    if kind == "product":
        return product(spec[1], spec[2])
    raise GroupoidError(f"unknown groupoid spec kind {kind!r}")


# -- components, automorphisms, cardinality ---------------------------------


@dataclass(frozen=True)
class Component:
    objects: tuple
    representative: int
    automorphisms: tuple  # morphism indices of Hom(rep, rep)


def components_and_automorphisms(G):
    """Connected components in canonical order (by smallest object index),
    each with its representative's automorphism group."""
    seen = [False] * G.object_count
    comps = []
    for start in range(G.object_count):
        if seen[start]:
            continue
        block = [start]
        seen[start] = True
        stack = [start]
        while stack:
            x = stack.pop()
            for m in G.out_of[x]:
                y = G.dst(m)
                if not seen[y]:
                    seen[y] = True
                    block.append(y)
                    stack.append(y)
            for m in G.into[x]:
                y = G.src(m)
                if not seen[y]:
                    seen[y] = True
                    block.append(y)
                    stack.append(y)
        block.sort()
        rep = block[0]
        comps.append(Component(tuple(block), rep, G.hom(rep, rep)))
    return comps


def component_index_of_objects(G, comps=None):
    """Map each object index to the index of its component."""
    if comps is None:
        comps = components_and_automorphisms(G)
    where = [None] * G.object_count
    for i, c in enumerate(comps):
        for x in c.objects:
            where[x] = i
    return where


def spanning_tree(G, comp):
    """Morphisms rep -> x for every object x of the component; identity at rep."""
    rep = comp.representative
    tree = {rep: G.identity_of[rep]}
    frontier = [rep]
    while frontier:
        x = frontier.pop(0)
        for m in G.out_of[x]:
            y = G.dst(m)
            if y not in tree:
                tree[y] = G.compose2(m, tree[x])
                frontier.append(y)
        for m in G.into[x]:
            y = G.src(m)
            if y not in tree:
                tree[y] = G.compose2(G.inverse_of[m], tree[x])
                frontier.append(y)
    return tree


def groupoid_cardinality(G):
    """Sum over components of 1/|Aut|, as an exact fraction."""
    total = Fraction(0)
    for comp in components_and_automorphisms(G):
        total += Fraction(1, len(comp.automorphisms))
    return total


def aut_generators(G, comp):
    """A small generating set (morphism indices) of Hom(rep, rep)."""
    auts = comp.automorphisms
    if len(auts) == 1:
        return ()
    view = _GroupView(G, auts)
    return tuple(view.elements[g] for g in view.generators())


def skeleton_functor(G):
    """If every component of G has trivial automorphisms, return
    (n, witness functor G -> discrete(n)); otherwise (None, offending component).

    The witness sends each object to its component index (components in
    canonical order) and every morphism to the corresponding identity."""
    comps = components_and_automorphisms(G)
    for comp in comps:
        if len(comp.automorphisms) != 1:
            return None, comp
    where = component_index_of_objects(G, comps)
    n = len(comps)
    target = discrete(n)
    omap = [where[x] for x in range(G.object_count)]
    mmap = [where[G.src(m)] for m in range(G.morphism_count)]
    return n, GroupoidFunctor(G, target, omap, mmap)


# -- group isomorphism (brute force over generator images) ------------------


class _GroupView:
    """A finite group presented as a list of morphism indices of some
    groupoid, closed under composition."""

    def __init__(self, G, elements):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        n = len(elements)
        self.mul = [[self.index[G.compose2(a, b)] for b in elements]
                    for a in elements]
        self.unit = next(i for i, e in enumerate(elements) if G.is_identity(e))
        self.order = n
        inv = [None] * n
        for a in range(n):
            inv[a] = next(b for b in range(n)
                          if self.mul[a][b] == self.unit == self.mul[b][a])
        self.inv = inv

    def element_orders(self):
        orders = []
        for a in range(self.order):
            k, x = 1, a
            while x != self.unit:
                x = self.mul[x][a]
                k += 1
            orders.append(k)
        return sorted(orders)

    def generators(self):
        """A small generating sequence, found greedily."""
        gens = []
        span = {self.unit}
        for a in range(self.order):
            if a in span:
                continue
            gens.append(a)
            span = self._closure(gens)
            if len(span) == self.order:
                break
        return gens

    def _closure(self, gens):
        span = {self.unit}
        frontier = [self.unit]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul[x][g]
                if y not in span:
                    span.add(y)
                    frontier.append(y)
        return span


def _extend_hom(A, B, gens, images):
    """Map A -> B defined on generators; returns the full map or None if the
    extension is inconsistent."""
    phi = [None] * A.order
    phi[A.unit] = B.unit
    frontier = [A.unit]
    while frontier:
        x = frontier.pop()
        for g, ig in zip(gens, images):
            y = A.mul[x][g]
            img = B.mul[phi[x]][ig]
            if phi[y] is None:
                phi[y] = img
                frontier.append(y)
            elif phi[y] != img:
                return None
    if any(v is None for v in phi):
        return None
    for a in range(A.order):
        for b in range(A.order):
            if phi[A.mul[a][b]] != B.mul[phi[a]][phi[b]]:
                return None
    return phi


def find_group_isomorphism(A, B):
    """Brute-force isomorphism between two _GroupViews, or None."""
    if A.order != B.order or A.element_orders() != B.element_orders():
        return None
    gens = A.generators()
    if not gens:
        return list(range(A.order)) if B.order == 1 else None
    candidates = [range(B.order)] * len(gens)
    for images in itertools.product(*candidates):
        phi = _extend_hom(A, B, gens, images)
        if phi is not None and len(set(phi)) == A.order:
            return phi
    return None


# -- equivalence of groupoids ------------------------------------------------


@dataclass(frozen=True)
class EquivalenceWitness:
    """A bijection between component lists together with group isomorphisms
    between matched automorphism groups (on morphism indices)."""

    matching: tuple          # tuple of (left component index, right component index)
    isos: tuple              # per pair, dict left aut morphism -> right aut morphism


@dataclass(frozen=True)
class EquivalenceResult:
    status: str              # "equivalent" | "not_equivalent" | "cap_exceeded"
    witness: EquivalenceWitness | None = None
    distinguishing: str | None = None

    def __bool__(self):
        return self.status == "equivalent"


def check_groupoid_equivalence(G, H, caps: Caps = DEFAULT_CAPS):
    """Decide G ≃ H by matching components' automorphism groups up to group
    isomorphism.  Positive answers carry an independently checkable witness;
    negative answers carry a distinguishing invariant."""
    cg = components_and_automorphisms(G)
    ch = components_and_automorphisms(H)
    if len(cg) != len(ch):
        return EquivalenceResult(
            "not_equivalent",
            distinguishing=f"component counts differ: {len(cg)} vs {len(ch)}")
    for comp in itertools.chain(cg, ch):
        if len(comp.automorphisms) > caps.aut_order:
            return EquivalenceResult("cap_exceeded", distinguishing=(
                f"automorphism group of order {len(comp.automorphisms)} "
                f"exceeds cap {caps.aut_order}"))
    orders_g = sorted(len(c.automorphisms) for c in cg)
    orders_h = sorted(len(c.automorphisms) for c in ch)
    if orders_g != orders_h:
        return EquivalenceResult(
            "not_equivalent",
            distinguishing=f"automorphism orders differ: {orders_g} vs {orders_h}")

    views_g = [_GroupView(G, c.automorphisms) for c in cg]
    views_h = [_GroupView(H, c.automorphisms) for c in ch]
    unmatched = list(range(len(ch)))
    matching, isos = [], []
    for i, vg in enumerate(views_g):
        hit = None
        for j in unmatched:
            phi = find_group_isomorphism(vg, views_h[j])
            if phi is not None:
                hit = (j, phi)
                break
        if hit is None:
            return EquivalenceResult(
                "not_equivalent",
                distinguishing=(f"no right component matches the automorphism "
                                f"group of left component {i} "
                                f"(order {vg.order})"))
        j, phi = hit
        unmatched.remove(j)
        matching.append((i, j))
        isos.append({vg.elements[a]: views_h[j].elements[phi[a]]
                     for a in range(vg.order)})
    witness = EquivalenceWitness(tuple(matching), tuple(isos))
    check = verify_equivalence_witness(G, H, witness)
    if not check.ok:
        raise GroupoidError(f"internal: produced witness fails checking: {check.first}")
    return EquivalenceResult("equivalent", witness=witness)


def verify_equivalence_witness(G, H, witness):
    """Independent check of an equivalence witness: the component matching is
    a bijection and every claimed group isomorphism preserves the tables."""
    fails = []
    cg = components_and_automorphisms(G)
    ch = components_and_automorphisms(H)
    left = [i for i, _ in witness.matching]
    right = [j for _, j in witness.matching]
    if sorted(left) != list(range(len(cg))) or sorted(right) != list(range(len(ch))):
        fails.append("component matching is not a bijection")
        return ValidationReport(False, fails)
    for (i, j), iso in zip(witness.matching, witness.isos):
        auts_g = cg[i].automorphisms
        auts_h = ch[j].automorphisms
        if sorted(iso.keys()) != sorted(auts_g) or sorted(iso.values()) != sorted(auts_h):
            fails.append(f"map for components ({i}, {j}) is not a bijection of automorphisms")
            continue
        for a in auts_g:
            for b in auts_g:
                if iso[G.compose2(a, b)] != H.compose2(iso[a], iso[b]):
                    fails.append(
                        f"map for components ({i}, {j}) does not preserve "
                        f"composition at ({a}, {b})")
                    return ValidationReport(False, fails)
    return ValidationReport(not fails, fails)
