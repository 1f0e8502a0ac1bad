"""Finite Priestley spaces and the clopen-upset operator calculus.

A finite Priestley space is a finite poset carrying the discrete topology:
every subset is clopen and the clopen upsets are exactly the upsets. The
topology is not stored; instead, closure/interior/openness are routed through
the small evaluation seam below so the defining formulas (which all mention
closure) are implemented verbatim and stay correct should a non-discrete
backend ever be added.

Operators on clopen upsets: kernel (union of clopen upsets way below U),
core (union of clopen Scott upsets inside U), regular part (union of clopen
upsets well inside U), center (union of clopen bisets inside U). Space,
map, and point-space predicates evaluate the defining conditions literally.
"""

from __future__ import annotations

from .errors import BindingError, ConsistencyError, UnknownPredicate
from .posets import MonotoneMap, PointSet, Poset, bits, popcount, upset_masks

LSPACE_PREDICATES = (
    "continuousL",
    "algebraicL",
    "arithmeticL",
    "coherentL",
    "kernelStable",
    "lCompact",
    "regularL",
    "zeroDimL",
    "stoneL",
)

MAP_PREDICATES = ("lMorphism", "properL", "coherentL")

POINT_SPACE_PREDICATES = (
    "sober",
    "compactlyBased",
    "stablyCompactlyBased",
    "spectral",
    "stoneSpace",
    "zeroDimensional",
    "hausdorff",
    "compact",
)


class FinPriestley:
    """Finite Priestley space: a poset of points, topology implicitly discrete."""

    __slots__ = ("points", "_spatial", "_ker", "_core", "_reg", "_cen",
                 "_scott", "_bisets", "_components")

    def __init__(self, points):
        if not isinstance(points, Poset):
            raise TypeError("expected a Poset of points")
        self.points = points
        self._spatial = None
        self._ker = {}
        self._core = {}
        self._reg = {}
        self._cen = {}
        self._scott = None
        self._bisets = None
        self._components = None

    @property
    def size(self):
        return self.points.size

    @property
    def full_mask(self):
        return self.points.full_mask

    def to_doc(self):
        return {"priestley": self.points.to_doc()}

    @classmethod
    def from_doc(cls, doc):
        if not isinstance(doc, dict) or "priestley" not in doc:
            raise ValueError("not a Priestley space document")
        return cls(Poset.from_doc(doc["priestley"]))

    def __repr__(self):
        return f"FinPriestley(points={self.points!r})"


# -- topology evaluation seam (discrete backend) ----------------------------


def closure(space, mask):
    """Topological closure; the discrete backend is the identity."""
    return mask


def interior(space, mask):
    return mask


def is_open(space, mask):
    return True


def is_closed(space, mask):
    return True


def is_clopen(space, mask):
    return is_open(space, mask) and is_closed(space, mask)


# -- clopen upsets -----------------------------------------------------------


def clop_upset_masks(space):
    """Masks of the clopen upsets (= all upsets, discretely), canonical order."""
    return [
        m for m in upset_masks(space.points) if is_clopen(space, m)
    ]


def clop_upsets(space):
    return [PointSet(space.points, m) for m in clop_upset_masks(space)]


def open_upset_masks(space):
    return [m for m in upset_masks(space.points) if is_open(space, m)]


def _upset_mask_of(space, point_set):
    if point_set.poset is not space.points:
        raise BindingError("point set is not bound to this space")
    mask = point_set.mask
    if space.points.up_mask(mask) != mask:
        raise ValueError("point set is not an upset")
    return mask


# -- spatial part --------------------------------------------------------------


class PointSpace:
    """The spatial part with its space-of-points topology, opens listed."""

    __slots__ = ("poset", "opens")

    def __init__(self, poset, opens):
        self.poset = poset
        self.opens = tuple(sorted(set(opens), key=lambda m: (popcount(m), tuple(bits(m)))))

    @property
    def full_mask(self):
        return self.poset.full_mask

    def closed_sets(self):
        return [self.full_mask & ~o for o in self.opens]

    def clopen_sets(self):
        opens = set(self.opens)
        return [o for o in self.opens if (self.full_mask & ~o) in opens]

    def point_closure(self, y):
        """Closure of a single point: intersection of all closed sets containing it."""
        out = self.full_mask
        for c in self.closed_sets():
            if (c >> y) & 1:
                out &= c
        return out

    def __repr__(self):
        return f"PointSpace(size={self.poset.size}, opens={len(self.opens)})"


def spatial_mask(space):
    """Points whose downset is clopen; equals the whole space finitely (checked)."""
    if space._spatial is None:
        points = space.points
        y = 0
        for p in range(points.size):
            if is_clopen(space, points.down[p]):
                y |= 1 << p
        if y != points.full_mask:
            raise ConsistencyError("spatial part of a finite space must be everything")
        space._spatial = y
    return space._spatial


def spatial_part(space):
    """The spatial part and its point-space topology {U ∩ Y : U clopen upset}.

    The returned topology is checked to coincide with the upset (Alexandroff)
    topology of the induced order, as it must when Y is all of the space.
    """
    y = spatial_mask(space)
    points = space.points
    opens = {u & y for u in clop_upset_masks(space)}
    point_space = PointSpace(points, opens)
    if set(point_space.opens) != set(upset_masks(points)):
        raise ConsistencyError("point-space topology must be the upset topology")
    return PointSet(points, y), point_space


# -- way below / kernel ----------------------------------------------------------


def clop_way_below(space, v, u):
    """V ≪ U: every open upset W with U ⊆ cl W already contains V.

    Checked against the finite collapse (V ≪ U iff V ⊆ U).
    """
    vm = _upset_mask_of(space, v)
    um = _upset_mask_of(space, u)
    result = _clop_way_below_masks(space, vm, um)
    if result != (vm & ~um == 0):
        raise ConsistencyError("clopen way-below must collapse to inclusion finitely")
    return result


def _clop_way_below_masks(space, vm, um):
    for w in open_upset_masks(space):
        if um & ~closure(space, w) == 0 and vm & ~w:
            return False
    return True


def kernel(space, u):
    """ker U: union of the clopen upsets way below U."""
    um = _upset_mask_of(space, u)
    return PointSet(space.points, _kernel_mask(space, um))


def _kernel_mask(space, um):
    if um not in space._ker:
        out = 0
        for vm in clop_upset_masks(space):
            if _clop_way_below_masks(space, vm, um):
                out |= vm
        space._ker[um] = out
    return space._ker[um]


# -- Scott upsets and the core ------------------------------------------------------


def is_scott_upset(space, subset):
    """Closed upsets whose minimal points lie in the spatial part.

    Also evaluates the closure-reflection formulation (F ⊆ cl W implies
    F ⊆ W for open upsets W) and insists the two routes agree.
    """
    if subset.poset is not space.points:
        raise BindingError("point set is not bound to this space")
    mask = subset.mask
    points = space.points
    structural = is_closed(space, mask) and points.up_mask(mask) == mask
    if structural:
        min_mask = 0
        for i in bits(mask):
            if points.down[i] & mask == 1 << i:
                min_mask |= 1 << i
        route_min = min_mask & ~spatial_mask(space) == 0
        route_reflect = all(
            mask & ~w == 0
            for w in open_upset_masks(space)
            if mask & ~closure(space, w) == 0
        )
    else:
        route_min = route_reflect = False
    if route_min != route_reflect:
        raise ConsistencyError("the two Scott-upset formulations disagree")
    return route_min


def clop_scott_upset_masks(space):
    if space._scott is None:
        space._scott = tuple(
            m
            for m in clop_upset_masks(space)
            if is_scott_upset(space, PointSet(space.points, m))
        )
    return list(space._scott)


def clop_scott_upsets(space):
    return [PointSet(space.points, m) for m in clop_scott_upset_masks(space)]


def core(space, u):
    """core U: union of the clopen Scott upsets contained in U."""
    um = _upset_mask_of(space, u)
    return PointSet(space.points, _core_mask(space, um))


def _core_mask(space, um):
    if um not in space._core:
        out = 0
        for vm in clop_scott_upset_masks(space):
            if vm & ~um == 0:
                out |= vm
        space._core[um] = out
    return space._core[um]


# -- well inside / regular part ------------------------------------------------------


def clop_well_inside(space, v, u):
    """V ≺ U: the downset of V is contained in U."""
    vm = _upset_mask_of(space, v)
    um = _upset_mask_of(space, u)
    return space.points.down_mask(vm) & ~um == 0


def reg_part(space, u):
    """reg U: union of the clopen upsets well inside U."""
    um = _upset_mask_of(space, u)
    if um not in space._reg:
        out = 0
        for vm in clop_upset_masks(space):
            if space.points.down_mask(vm) & ~um == 0:
                out |= vm
        space._reg[um] = out
    return PointSet(space.points, space._reg[um])


# -- bisets / center --------------------------------------------------------------------


def comparability_components(space):
    """Connected components of the comparability graph, as masks."""
    if space._components is None:
        points = space.points
        n = points.size
        seen = 0
        comps = []
        for start in range(n):
            if (seen >> start) & 1:
                continue
            comp = 1 << start
            while True:
                grown = comp
                for i in bits(comp):
                    grown |= points.up[i] | points.down[i]
                if grown == comp:
                    break
                comp = grown
            comps.append(comp)
            seen |= comp
        space._components = tuple(comps)
    return list(space._components)


def clopen_biset_masks(space):
    """Clopen bisets: exactly the unions of comparability components."""
    if space._bisets is None:
        comps = comparability_components(space)
        masks = set()
        for k in range(1 << len(comps)):
            m = 0
            for i in bits(k):
                m |= comps[i]
            masks.add(m)
        space._bisets = tuple(
            sorted(masks, key=lambda m: (popcount(m), tuple(bits(m))))
        )
    return list(space._bisets)


def clopen_bisets(space):
    return [PointSet(space.points, m) for m in clopen_biset_masks(space)]


def center(space, u):
    """cen U: union of the clopen bisets contained in U."""
    um = _upset_mask_of(space, u)
    if um not in space._cen:
        out = 0
        for vm in clopen_biset_masks(space):
            if vm & ~um == 0:
                out |= vm
        space._cen[um] = out
    return PointSet(space.points, space._cen[um])


# -- structural sanity predicates ----------------------------------------------------


def has_priestley_separation(space):
    """x not<= y implies a clopen upset contains x and misses y."""
    points = space.points
    ups = clop_upset_masks(space)
    for x in range(points.size):
        for y in range(points.size):
            if x != y and not points.leq(x, y):
                if not any((u >> x) & 1 and not (u >> y) & 1 for u in ups):
                    return False
    return True


def is_esakia(space):
    """The downset of each clopen set is clopen."""
    points = space.points
    return all(
        is_clopen(space, points.down_mask(m))
        for m in range(1 << points.size)
        if is_clopen(space, m)
    )


def is_extremally_order_disconnected(space):
    """The closure of each open upset is open."""
    return all(is_open(space, closure(space, u)) for u in open_upset_masks(space))


# -- space predicates ---------------------------------------------------------------


def lspace_predicate(space, name):
    ok, _ = lspace_predicate_witness(space, name)
    return ok


def lspace_predicate_witness(space, name):
    """Density of O in U means cl(O) = U, evaluated with the literal closure."""
    if name not in LSPACE_PREDICATES:
        raise UnknownPredicate(f"unknown L-space predicate {name!r}")
    ups = clop_upset_masks(space)
    if name == "continuousL":
        return _density_sweep(space, ups, _kernel_mask)
    if name == "algebraicL":
        return _density_sweep(space, ups, _core_mask)
    if name == "regularL":
        return _density_sweep(space, ups, lambda s, m: reg_part(
            s, PointSet(s.points, m)).mask)
    if name == "zeroDimL":
        return _density_sweep(space, ups, lambda s, m: center(
            s, PointSet(s.points, m)).mask)
    if name == "kernelStable":
        for um in ups:
            for vm in ups:
                lhs = _kernel_mask(space, um & vm)
                rhs = _kernel_mask(space, um) & _kernel_mask(space, vm)
                if lhs != rhs:
                    return False, {"upsets": (um, vm)}
        return True, None
    if name == "lCompact":
        full = space.full_mask
        ok = _kernel_mask(space, full) == full
        return ok, (None if ok else {"upset": full})
    if name == "arithmeticL":
        ok, w = lspace_predicate_witness(space, "kernelStable")
        if not ok:
            return ok, w
        return lspace_predicate_witness(space, "algebraicL")
    if name == "coherentL":
        ok, w = lspace_predicate_witness(space, "lCompact")
        if not ok:
            return ok, w
        return lspace_predicate_witness(space, "arithmeticL")
    # stoneL
    ok, w = lspace_predicate_witness(space, "lCompact")
    if not ok:
        return ok, w
    return lspace_predicate_witness(space, "zeroDimL")


def _density_sweep(space, ups, part):
    for um in ups:
        if closure(space, part(space, um)) != um:
            return False, {"upset": um}
    return True, None


# -- maps ------------------------------------------------------------------------------


class SpaceMap:
    """Monotone (hence continuous) map between finite Priestley spaces."""

    __slots__ = ("source", "target", "mapping", "_flags")

    def __init__(self, source, target, mapping):
        if mapping.source is not source.points or mapping.target is not target.points:
            raise BindingError("underlying map is not bound to these spaces")
        self.source = source
        self.target = target
        self.mapping = mapping
        self._flags = {}

    @classmethod
    def from_images(cls, source, target, image):
        return cls(source, target, MonotoneMap(source.points, target.points, image))

    @classmethod
    def identity(cls, space):
        return cls(space, space, MonotoneMap.identity(space.points))

    def __call__(self, point):
        return self.mapping(point)

    def _flag(self, name):
        if name not in self._flags:
            self._flags[name] = map_predicate(self, name)
        return self._flags[name]

    @property
    def is_l_morphism(self):
        return self._flag("lMorphism")

    @property
    def is_proper(self):
        return self._flag("properL")

    @property
    def is_coherent(self):
        return self._flag("coherentL")

    def __repr__(self):
        return f"SpaceMap({self.mapping.image})"


def compose_space_maps(outer, inner):
    from .posets import compose_maps

    if inner.target is not outer.source:
        raise BindingError("maps do not compose")
    return SpaceMap(inner.source, outer.target, compose_maps(outer.mapping, inner.mapping))


def map_predicate(space_map, name):
    """Literal evaluation over all (open/clopen) upsets of the target."""
    if name not in MAP_PREDICATES:
        raise UnknownPredicate(f"unknown space-map predicate {name!r}")
    src, tgt = space_map.source, space_map.target
    f = space_map.mapping
    if name == "lMorphism":
        for um in open_upset_masks(tgt):
            if f.preimage_mask(closure(tgt, um)) != closure(src, f.preimage_mask(um)):
                return False
        return True
    if name == "properL":
        for um in clop_upset_masks(tgt):
            if f.preimage_mask(_kernel_mask(tgt, um)) & ~_kernel_mask(
                src, f.preimage_mask(um)
            ):
                return False
        return True
    # coherentL
    for um in clop_upset_masks(tgt):
        if f.preimage_mask(_core_mask(tgt, um)) & ~_core_mask(
            src, f.preimage_mask(um)
        ):
            return False
    return True


def monotone_space_maps(source, target, search_bound=None):
    from .posets import monotone_maps

    return [
        SpaceMap(source, target, m)
        for m in monotone_maps(source.points, target.points, search_bound)
    ]


# -- point-space predicates ---------------------------------------------------------


def _is_compact_subset(point_space, mask):
    """Subsets of a finite space are compact: any open cover admits the
    subcover obtained by picking one member per point. The witness selection
    is performed against the full open family; a set not covered by all opens
    has no covers at all and is compact vacuously."""
    for y in bits(mask):
        if not any((o >> y) & 1 for o in point_space.opens):
            return True
    return True


def _irreducible_closed_sets(point_space):
    """Nonempty closed sets that are not the union of two proper closed subsets."""
    closed = point_space.closed_sets()
    out = []
    for c in closed:
        if c == 0:
            continue
        reducible = any(
            a | b == c
            for a in closed
            if a != c and a & ~c == 0
            for b in closed
            if b != c and b & ~c == 0
        )
        if not reducible:
            out.append(c)
    return out


def point_space_predicate(point_space, name):
    ok, _ = point_space_predicate_witness(point_space, name)
    return ok


def point_space_predicate_witness(point_space, name):
    if name not in POINT_SPACE_PREDICATES:
        raise UnknownPredicate(f"unknown point-space predicate {name!r}")
    opens = point_space.opens
    full = point_space.full_mask
    n = point_space.poset.size
    if name == "sober":
        for c in _irreducible_closed_sets(point_space):
            generic = [
                y for y in bits(c) if point_space.point_closure(y) == c
            ]
            if len(generic) != 1:
                return False, {"closed": c}
        return True, None
    if name == "compact":
        ok = _is_compact_subset(point_space, full)
        return ok, None
    if name == "compactlyBased":
        for o in opens:
            for y in bits(o):
                if not any(
                    (b >> y) & 1 and b & ~o == 0 and _is_compact_subset(point_space, b)
                    for b in opens
                ):
                    return False, {"open": o, "point": y}
        return True, None
    if name == "stablyCompactlyBased":
        ok, w = point_space_predicate_witness(point_space, "compactlyBased")
        if not ok:
            return ok, w
        ok, w = point_space_predicate_witness(point_space, "sober")
        if not ok:
            return ok, w
        compact_opens = [o for o in opens if _is_compact_subset(point_space, o)]
        for a in compact_opens:
            for b in compact_opens:
                if not _is_compact_subset(point_space, a & b):
                    return False, {"opens": (a, b)}
        return True, None
    if name == "spectral":
        ok, w = point_space_predicate_witness(point_space, "stablyCompactlyBased")
        if not ok:
            return ok, w
        return point_space_predicate_witness(point_space, "compact")
    if name == "zeroDimensional":
        clopens = point_space.clopen_sets()
        for o in opens:
            union = 0
            for b in clopens:
                if b & ~o == 0:
                    union |= b
            if union != o:
                return False, {"open": o}
        return True, None
    if name == "hausdorff":
        for x in range(n):
            for y in range(x + 1, n):
                if not any(
                    (u >> x) & 1 and (v >> y) & 1 and u & v == 0
                    for u in opens
                    for v in opens
                ):
                    return False, {"points": (x, y)}
        return True, None
    # stoneSpace: zero-dimensional compact Hausdorff
    ok, w = point_space_predicate_witness(point_space, "zeroDimensional")
    if not ok:
        return ok, w
    ok, w = point_space_predicate_witness(point_space, "compact")
    if not ok:
        return ok, w
    return point_space_predicate_witness(point_space, "hausdorff")
