"""Exhaustive functor enumeration with constraint propagation.

``iter_functors`` enumerates functors between two finite groupoids by
backtracking over object and morphism images.  Propagation keeps the search
tractable: identities, inverses and composites of assigned morphisms are
forced immediately, as are images under any equivariance constraints
(pairs of strict isomorphisms the functor must intertwine).  Candidate
order is index order throughout, so first hits are deterministic.
"""

from __future__ import annotations

from .config import DEFAULT_CAPS, CapExceeded
from .groupoid import GroupoidFunctor


class SearchCounter:
    """Shared node budget for one search stage."""

    def __init__(self, limit, what="witness search"):
        self.limit = limit
        self.what = what
        self.nodes = 0

    def tick(self, k=1):
        self.nodes += k
        if self.nodes > self.limit:
            raise CapExceeded(self.what, self.limit, self.nodes)


class _Conflict(Exception):
    pass


class _State:
    __slots__ = ("A", "B", "obj", "mor", "trail", "by_src", "by_dst", "pairs")

    def __init__(self, A, B, pairs):
        self.A = A
        self.B = B
        self.obj = [None] * A.object_count
        self.mor = [None] * A.morphism_count
        self.trail = []
        # assigned morphisms indexed by their source/target objects in A
        self.by_src = [[] for _ in range(A.object_count)]
        self.by_dst = [[] for _ in range(A.object_count)]
        self.pairs = pairs  # [(alpha, beta)] equivariance constraints

    # -- assignment with trail -------------------------------------------

    def set_obj(self, x, b, queue):
        cur = self.obj[x]
        if cur is not None:
            if cur != b:
                raise _Conflict
            return
        self.obj[x] = b
        self.trail.append(("o", x))
        queue.append(("o", x))

    def set_mor(self, f, m, queue):
        cur = self.mor[f]
        if cur is not None:
            if cur != m:
                raise _Conflict
            return
        A, B = self.A, self.B
        s, t = A.morphisms[f]
        ms, mt = B.morphisms[m]
        self.set_obj(s, ms, queue)
        self.set_obj(t, mt, queue)
        if self.obj[s] != ms or self.obj[t] != mt:
            raise _Conflict
        self.mor[f] = m
        self.trail.append(("m", f, s, t))
        self.by_src[s].append(f)
        self.by_dst[t].append(f)
        queue.append(("m", f))

    def undo_to(self, mark):
        while len(self.trail) > mark:
            kind = self.trail.pop()
            if kind[0] == "o":
                self.obj[kind[1]] = None
            else:
                _, f, s, t = kind
                self.mor[f] = None
                self.by_src[s].pop()
                self.by_dst[t].pop()

    # -- propagation to fixpoint -------------------------------------------

    def propagate(self, queue):
        A, B = self.A, self.B
        while queue:
            kind = queue.pop()
            if kind[0] == "o":
                x = kind[1]
                b = self.obj[x]
                self.set_mor(A.identity_of[x], B.identity_of[b], queue)
                for alpha, beta in self.pairs:
                    self.set_obj(alpha.object_map[x], beta.object_map[b], queue)
            else:
                f = kind[1]
                m = self.mor[f]
                self.set_mor(A.inverse_of[f], B.inverse_of[m], queue)
                for alpha, beta in self.pairs:
                    self.set_mor(alpha.morphism_map[f], beta.morphism_map[m], queue)
                s, t = A.morphisms[f]
                # compose with assigned neighbours, both ways
                for g in list(self.by_src[t]):
                    mg = self.mor[g]
                    self.set_mor(A.compose2(g, f), B.compose2(mg, m), queue)
                for e in list(self.by_dst[s]):
                    me = self.mor[e]
                    self.set_mor(A.compose2(f, e), B.compose2(m, me), queue)


def _pick_variable(st):
    for x in range(st.A.object_count):
        if st.obj[x] is None:
            return ("o", x)
    for f in range(st.A.morphism_count):
        if st.mor[f] is None:
            return ("m", f)
    return None


def iter_functors(A, B, pairs=(), require_equivalence=False, counter=None):
    """Yield every functor A -> B compatible with the equivariance ``pairs``
    (each pair (alpha, beta) of strict isos forces F∘alpha = beta∘F).

    With ``require_equivalence`` only essentially surjective, fully faithful
    functors are yielded.  Deterministic order; complete up to the counter's
    budget.
    """
    if counter is None:
        counter = SearchCounter(DEFAULT_CAPS.max_candidates)
    if A.object_count == 0:
        trivial = GroupoidFunctor(A, B, (), ())
        if not require_equivalence or is_equivalence_functor(trivial):
            yield trivial
        return
    if B.object_count == 0:
        return
    st = _State(A, B, tuple(pairs))

    def solve():
        var = _pick_variable(st)
        if var is None:
            F = GroupoidFunctor(A, B, tuple(st.obj), tuple(st.mor))
            if not require_equivalence or is_equivalence_functor(F):
                yield F
            return
        counter.tick()
        if var[0] == "o":
            x = var[1]
            candidates = range(B.object_count)
            for b in candidates:
                mark = len(st.trail)
                queue = []
                try:
                    st.set_obj(x, b, queue)
                    st.propagate(queue)
                except _Conflict:
                    st.undo_to(mark)
                    continue
                yield from solve()
                st.undo_to(mark)
        else:
            f = var[1]
            s, t = st.A.morphisms[f]
            for m in st.B.hom(st.obj[s], st.obj[t]):
                mark = len(st.trail)
                queue = []
                try:
                    st.set_mor(f, m, queue)
                    st.propagate(queue)
                except _Conflict:
                    st.undo_to(mark)
                    continue
                yield from solve()
                st.undo_to(mark)

    yield from solve()


def is_equivalence_functor(F):
    """Essentially surjective and fully faithful, decided directly."""
    from .groupoid import components_and_automorphisms, component_index_of_objects

    A, B = F.source, F.target
    comps_b = components_and_automorphisms(B)
    where_b = component_index_of_objects(B, comps_b)
    hit = set(where_b[F.object_map[x]] for x in range(A.object_count))
    if len(hit) != len(comps_b):
        return False
    for x in range(A.object_count):
        for y in range(A.object_count):
            dom = A.hom(x, y)
            cod = B.hom(F.object_map[x], F.object_map[y])
            if len(dom) != len(cod):
                return False
            images = set(F.morphism_map[f] for f in dom)
            if len(images) != len(dom):
                return False
    return True
