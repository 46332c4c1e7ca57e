"""Collapse-type witness searches (C, D, F), verification, and screens.

All searches run in a fixed deterministic order and return the first witness
that order produces, so repeated runs give identical reports.  Every witness
emitted by a search is re-verified from scratch before being returned.

Witness semantics, with H the subgroup generated by the listed generators:

* type D: r, s in the class with distinct <r,s>-orbits and (rs)^2 != (sr)^2;
* type F: four pairwise-noncommuting class elements whose orbits under the
  subgroup the four generate are pairwise distinct;
* type C: noncommuting r, s in the class with distinct H-orbits R, S such
  that H = <R union S> and min(|R|,|S|) > 2 or max(|R|,|S|) > 4.  For classes
  of odd element order the size clause is automatic and a pair scan over
  <r,s> is already complete, so that cheaper route is used.
"""

from dataclasses import dataclass, field
from typing import Optional

from .rack import Rack, is_abelian, is_indecomposable, subrack_closure

_GROUP_CAP = 10**5
_LATTICE_CAP = 2000
_F_BOUND = 200000
_PAIR_BUDGET = 100000

# abelian_screen verdicts
ALL_REPS_INFINITE = "AllRepsInfinite"
NEEDS_RHO_MINUS_ONE = "NeedsRhoMinusOne"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class WitnessD:
    r: object
    s: object
    orbit_r: tuple
    orbit_s: tuple
    subgroup_order: Optional[int] = None

    @property
    def orbit_sizes(self):
        return (len(self.orbit_r), len(self.orbit_s))


@dataclass(frozen=True)
class WitnessF:
    elements: tuple  # (r1, r2, r3, r4)
    orbits: tuple    # four orbit tuples

    @property
    def orbit_sizes(self):
        return tuple(len(o) for o in self.orbits)


@dataclass(frozen=True)
class WitnessC:
    r: object
    s: object
    subgroup_gens: Optional[tuple]
    orbit_r: tuple
    orbit_s: tuple
    odd_shortcut: bool = False

    @property
    def orbit_sizes(self):
        return (len(self.orbit_r), len(self.orbit_s))


@dataclass(frozen=True)
class Verdict:
    tag: str  # TypeD | TypeF | TypeC | NoWitnessWithinBounds
    witness: object
    bounds: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# group-side helpers (work through a class's RawOps, so they apply equally to
# matrix groups and central quotients)

def _closure(ops, gens, cap):
    """Element set of the subgroup generated by gens; None if cap exceeded."""
    step = [ops.canon(g) for g in gens]
    step += [ops.canon(ops.inv(g)) for g in gens]
    if not step:
        return None
    ident = ops.identity_of(step[0])
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in step:
                y = ops.canon(ops.mul(x, g))
                if y not in seen:
                    if len(seen) >= cap:
                        return None
                    seen.add(y)
                    new.append(y)
        frontier = new
    return frozenset(seen)


def _conj_orbit(ops, gens, x):
    """Orbit of x under conjugation by the subgroup generated by gens."""
    pairs = [(ops.canon(g), ops.canon(ops.inv(g))) for g in gens]
    start = ops.canon(x)
    seen = {start}
    frontier = [start]
    while frontier:
        new = []
        for z in frontier:
            for g, ginv in pairs:
                w = ops.canon(ops.mul(ops.mul(g, z), ginv))
                if w not in seen:
                    seen.add(w)
                    new.append(w)
        frontier = new
    return frozenset(seen)


def _ops_order(ops, x):
    ident = ops.identity_of(x)
    cur = ops.canon(x)
    k = 1
    while cur != ident:
        cur = ops.canon(ops.mul(cur, x))
        k += 1
        if k > 10**6:
            raise ValueError("element order exceeds 10^6")
    return k


def _commutes(ops, a, b):
    return ops.canon(ops.mul(a, b)) == ops.canon(ops.mul(b, a))


def _rack_orbit(rack, gen_indices, start):
    """Index orbit of start under translations by the given rack indices."""
    op = rack.op
    inv_op = rack.inv_op
    seen = {start}
    frontier = [start]
    while frontier:
        new = []
        for z in frontier:
            for g in gen_indices:
                for w in (op[g][z], inv_op[g][z]):
                    if w not in seen:
                        seen.add(w)
                        new.append(w)
        frontier = new
    return seen


def _require_class(rack):
    c = rack.source_class
    if c is None:
        raise ValueError("rack has no class provenance")
    return c


def _sorted_elems(rack, indices):
    return tuple(sorted(rack.carrier[i] for i in indices))


# ---------------------------------------------------------------------------
# type D

def check_type_d(rack, group_cap=_GROUP_CAP, stats=None):
    """First type-D witness in pair-scan order, or None after a complete scan."""
    c = _require_class(rack)
    if stats is None:
        stats = {}
    n = len(rack)
    stats.update({"pairs_scanned": 0, "complete": True, "order_truncated": False})
    if n <= 2:
        return None
    ops = c.ops
    els = rack.carrier
    pairs = 0
    for i in range(n):
        r = els[i]
        for j in range(n):
            if j == i:
                continue
            s = els[j]
            pairs += 1
            rs = ops.canon(ops.mul(r, s))
            sr = ops.canon(ops.mul(s, r))
            if rs == sr:
                continue
            if ops.canon(ops.mul(rs, rs)) == ops.canon(ops.mul(sr, sr)):
                continue
            orb_r = _rack_orbit(rack, (i, j), i)
            if j in orb_r:
                continue
            orb_s = _rack_orbit(rack, (i, j), j)
            hset = _closure(ops, (r, s), group_cap)
            if hset is None:
                stats["order_truncated"] = True
            w = WitnessD(
                r=r, s=s,
                orbit_r=_sorted_elems(rack, orb_r),
                orbit_s=_sorted_elems(rack, orb_s),
                subgroup_order=None if hset is None else len(hset),
            )
            stats["pairs_scanned"] = pairs
            if not verify_witness(w, c):
                raise AssertionError("type-D witness failed re-verification")
            return w
    stats["pairs_scanned"] = pairs
    return None


# ---------------------------------------------------------------------------
# type F

def check_type_f(rack, bound=_F_BOUND, stats=None):
    """First type-F witness among quadruples anchored at the class base point.

    Completeness: witness conditions are conjugation-covariant, so anchoring
    r1 at the base point loses nothing, and they are symmetric in r2..r4, so
    ascending scan is exhaustive within the declared quadruple bound.
    """
    c = _require_class(rack)
    if stats is None:
        stats = {}
    n = len(rack)
    stats.update({"quadruples_checked": 0, "complete": True, "bound": bound})
    if n <= 2:
        return None
    ops = c.ops
    els = rack.carrier
    b0 = rack.index[ops.canon(c.base)]
    comm_cache = {}

    def comm(i, j):
        key = (i, j) if i < j else (j, i)
        v = comm_cache.get(key)
        if v is None:
            v = _commutes(ops, els[i], els[j])
            comm_cache[key] = v
        return v

    cands = [j for j in range(n) if j != b0 and not comm(b0, j)]
    checked = 0
    for a2 in range(len(cands)):
        j2 = cands[a2]
        for a3 in range(a2 + 1, len(cands)):
            j3 = cands[a3]
            if comm(j2, j3):
                continue
            for a4 in range(a3 + 1, len(cands)):
                j4 = cands[a4]
                if comm(j2, j4) or comm(j3, j4):
                    continue
                if checked >= bound:
                    stats["quadruples_checked"] = checked
                    stats["complete"] = False
                    return None
                checked += 1
                quad = (b0, j2, j3, j4)
                orbits = []
                distinct = True
                for pos, a in enumerate(quad):
                    orb = _rack_orbit(rack, quad, a)
                    if any(b in orb for b in quad[pos + 1:]):
                        distinct = False
                        break
                    orbits.append(orb)
                if not distinct:
                    continue
                w = WitnessF(
                    elements=tuple(els[a] for a in quad),
                    orbits=tuple(_sorted_elems(rack, o) for o in orbits),
                )
                stats["quadruples_checked"] = checked
                if not verify_witness(w, c):
                    raise AssertionError("type-F witness failed re-verification")
                return w
    stats["quadruples_checked"] = checked
    return None


# ---------------------------------------------------------------------------
# subgroup lattice and type C

class SubgroupLattice(list):
    """List of subgroup records in discovery order, plus a completeness flag."""

    complete = True
    skipped_large = 0


@dataclass(frozen=True)
class SubgroupRec:
    gens: tuple
    elements: frozenset

    @property
    def order(self):
        return len(self.elements)


def class_subgroup_lattice(c, cap=_LATTICE_CAP, group_cap=_GROUP_CAP):
    """All subgroups generated by subsets of the class, by fixed-point growth.

    Seeds the cyclic subgroups of single class elements, then repeatedly
    extends each known subgroup by one class element outside it, deduplicating
    by element set, until stable or the subgroup-count cap is hit.  Subgroups
    whose closure exceeds group_cap elements are skipped; either kind of
    truncation clears the completeness flag.
    """
    ops = c.ops
    els = c.elements
    seen = {}
    out = SubgroupLattice()
    complete = True
    skipped = 0
    queue = []
    for x in els:
        if len(seen) >= cap:
            complete = False
            break
        hset = _closure(ops, (x,), group_cap)
        if hset is None:
            skipped += 1
            complete = False
            continue
        if hset in seen:
            continue
        rec = SubgroupRec(gens=(x,), elements=hset)
        seen[hset] = rec
        out.append(rec)
        queue.append(rec)
    qi = 0
    while qi < len(queue) and complete:
        rec = queue[qi]
        qi += 1
        for z in els:
            if z in rec.elements:
                continue
            hset = _closure(ops, rec.gens + (z,), group_cap)
            if hset is None:
                skipped += 1
                complete = False
                continue
            if hset in seen:
                continue
            rec2 = SubgroupRec(gens=rec.gens + (z,), elements=hset)
            seen[hset] = rec2
            out.append(rec2)
            queue.append(rec2)
            if len(seen) >= cap:
                complete = False
                break
    out.complete = complete
    out.skipped_large = skipped
    return out


def check_type_c(rack, lattice_cap=_LATTICE_CAP, group_cap=_GROUP_CAP,
                 stats=None, find_all=False):
    """First type-C witness, or None.

    Classes of odd element order use the complete noncommuting-pair scan over
    H = <r,s> (distinct-orbit test only; the size clause holds automatically
    at odd order, and the pair granularity is decisive there).  Other classes
    scan the class-generated subgroup lattice in discovery order: for each
    subgroup H and each pair of distinct H-orbits inside the class with a
    noncommuting representative pair, H is shrunk to H' = <R union S> and the
    four witness conditions are tested there.

    With find_all=True, returns the list of all witnesses (first
    representative pair per subgroup/orbit-pair, no early exit).
    """
    c = _require_class(rack)
    if stats is None:
        stats = {}
    n = len(rack)
    ops = c.ops
    stats.update({"complete": True, "pairs_scanned": 0})
    if n <= 2:
        stats["mode"] = "degenerate"
        return [] if find_all else None
    base_order = _ops_order(ops, c.base)
    els = rack.carrier
    found = []

    if base_order % 2 == 1:
        stats["mode"] = "odd-pair-scan"
        pairs = 0
        for i in range(n):
            r = els[i]
            for j in range(i + 1, n):
                s = els[j]
                pairs += 1
                if _commutes(ops, r, s):
                    continue
                orb_r = _rack_orbit(rack, (i, j), i)
                if j in orb_r:
                    continue
                orb_s = _rack_orbit(rack, (i, j), j)
                w = WitnessC(
                    r=r, s=s, subgroup_gens=(r, s),
                    orbit_r=_sorted_elems(rack, orb_r),
                    orbit_s=_sorted_elems(rack, orb_s),
                    odd_shortcut=True,
                )
                stats["pairs_scanned"] = pairs
                if not verify_witness(w, c):
                    raise AssertionError("type-C witness failed re-verification")
                if find_all:
                    found.append(w)
                    continue
                return w
        stats["pairs_scanned"] = pairs
        return found if find_all else None

    stats["mode"] = "lattice"
    lattice = class_subgroup_lattice(c, cap=lattice_cap, group_cap=group_cap)
    stats["lattice_size"] = len(lattice)
    stats["lattice_complete"] = lattice.complete
    stats["complete"] = lattice.complete
    pairs = 0
    closure_cap_hit = False
    for rec in lattice:
        members = [x for x in els if x in rec.elements]
        if len(members) < 2:
            continue
        orbits = []
        assigned = set()
        for m in members:
            if m in assigned:
                continue
            orb = _conj_orbit(ops, rec.gens, m)
            assigned |= orb
            orbits.append(sorted(orb))
        if len(orbits) < 2:
            continue
        orbits.sort(key=lambda o: o[0])
        for ai in range(len(orbits)):
            for bi in range(ai + 1, len(orbits)):
                A = orbits[ai]
                B = orbits[bi]
                union = tuple(sorted(set(A) | set(B)))
                h2 = _closure(ops, union, group_cap)
                if h2 is None:
                    closure_cap_hit = True
                    continue
                hit = None
                for r in A:
                    for s in B:
                        if _commutes(ops, r, s):
                            continue
                        pairs += 1
                        R2 = _conj_orbit(ops, union, r)
                        if s in R2:
                            continue
                        S2 = _conj_orbit(ops, union, s)
                        regen = _closure(ops, tuple(sorted(R2 | S2)), group_cap)
                        if regen is None:
                            closure_cap_hit = True
                            continue
                        if regen != h2:
                            continue
                        mn = min(len(R2), len(S2))
                        mx = max(len(R2), len(S2))
                        if not (mn > 2 or mx > 4):
                            continue
                        w = WitnessC(
                            r=r, s=s, subgroup_gens=union,
                            orbit_r=tuple(sorted(R2)),
                            orbit_s=tuple(sorted(S2)),
                            odd_shortcut=False,
                        )
                        if not verify_witness(w, c):
                            raise AssertionError(
                                "type-C witness failed re-verification")
                        hit = w
                        break
                    if hit is not None:
                        break
                if hit is not None:
                    stats["pairs_scanned"] = pairs
                    if find_all:
                        found.append(hit)
                    else:
                        return hit
    stats["pairs_scanned"] = pairs
    if closure_cap_hit:
        stats["complete"] = False
    return found if find_all else None


# ---------------------------------------------------------------------------
# verification

def verify_witness(witness, c):
    """Re-checks every invariant of the witness type from scratch.

    Fresh closures and fresh orbits only; stored orbit fields must agree with
    the recomputation.  Returns False on any failure, never raises.
    """
    try:
        if isinstance(witness, WitnessD):
            return _verify_d(witness, c)
        if isinstance(witness, WitnessF):
            return _verify_f(witness, c)
        if isinstance(witness, WitnessC):
            return _verify_c(witness, c)
        return False
    except Exception:
        return False


def _verify_d(w, c):
    ops = c.ops
    r = ops.canon(w.r)
    s = ops.canon(w.s)
    if r not in c or s not in c or r == s:
        return False
    rs = ops.canon(ops.mul(r, s))
    sr = ops.canon(ops.mul(s, r))
    if rs == sr:
        return False
    if ops.canon(ops.mul(rs, rs)) == ops.canon(ops.mul(sr, sr)):
        return False
    orb_r = _conj_orbit(ops, (r, s), r)
    if s in orb_r:
        return False
    orb_s = _conj_orbit(ops, (r, s), s)
    if set(w.orbit_r) != set(orb_r) or set(w.orbit_s) != set(orb_s):
        return False
    return True


def _verify_f(w, c):
    ops = c.ops
    quad = tuple(ops.canon(x) for x in w.elements)
    if len(quad) != 4 or len(set(quad)) != 4:
        return False
    if any(x not in c for x in quad):
        return False
    for i in range(4):
        for j in range(i + 1, 4):
            if _commutes(ops, quad[i], quad[j]):
                return False
    orbits = [_conj_orbit(ops, quad, x) for x in quad]
    for i in range(4):
        for j in range(i + 1, 4):
            if orbits[i] == orbits[j]:
                return False
    if tuple(frozenset(o) for o in w.orbits) != tuple(frozenset(o) for o in orbits):
        return False
    return True


def _verify_c(w, c, group_cap=10 * _GROUP_CAP):
    ops = c.ops
    r = ops.canon(w.r)
    s = ops.canon(w.s)
    if w.subgroup_gens is None:
        return False
    gens = tuple(ops.canon(g) for g in w.subgroup_gens)
    if not gens or r not in c or s not in c:
        return False
    if any(g not in c for g in gens):
        return False
    if _commutes(ops, r, s):
        return False
    h = _closure(ops, gens, group_cap)
    if h is None or r not in h or s not in h:
        return False
    R = _conj_orbit(ops, gens, r)
    if s in R:
        return False
    S = _conj_orbit(ops, gens, s)
    regen = _closure(ops, tuple(sorted(R | S)), group_cap)
    if regen != h:
        return False
    mn = min(len(R), len(S))
    mx = max(len(R), len(S))
    if not (mn > 2 or mx > 4):
        return False
    if set(w.orbit_r) != set(R) or set(w.orbit_s) != set(S):
        return False
    return True


# ---------------------------------------------------------------------------
# pullback along rack surjections

@dataclass(frozen=True)
class RackMorphism:
    """Rack map source -> target given by target indices per source index."""
    source: Rack
    target: Rack
    mapping: tuple

    def __post_init__(self):
        if len(self.mapping) != len(self.source):
            raise ValueError("mapping length must equal source size")
        sop = self.source.op
        top = self.target.op
        m = self.mapping
        n = len(self.source)
        for a in range(n):
            ma = m[a]
            for b in range(n):
                if top[ma][m[b]] != m[sop[a][b]]:
                    raise ValueError(
                        "not a rack morphism at indices (%d, %d)" % (a, b))

    def is_surjective(self):
        return len(set(self.mapping)) == len(self.target)


def pullback_type_c(morphism, witness, stats=None):
    """Lifts a verified type-C witness through a surjective rack map.

    Runs the decreasing fixed-point iteration: start from the full preimage of
    R union S, then alternately recompute the two translation orbits of the
    lifted base points until the union stabilizes.  The stabilized pieces are
    checked to form a decomposable subrack with noncommuting base points and
    at least the original sizes; the result is a rack-level witness (its
    subgroup_gens field is None).
    """
    if stats is None:
        stats = {}
    if not morphism.is_surjective():
        raise ValueError("morphism is not surjective")
    src = morphism.source
    tgt = morphism.target
    tcls = tgt.source_class
    if tcls is not None:
        if not verify_witness(witness, tcls):
            raise ValueError("witness fails verification in the target")
    else:
        _check_rackside_c(tgt,
                          [tgt.index[x] for x in witness.orbit_r],
                          [tgt.index[x] for x in witness.orbit_s],
                          tgt.index[witness.r], tgt.index[witness.s])
    r_t = tgt.index[witness.r]
    s_t = tgt.index[witness.s]
    R_t = {tgt.index[x] for x in witness.orbit_r}
    S_t = {tgt.index[x] for x in witness.orbit_s}
    m = morphism.mapping
    r_lift = min(a for a in range(len(src)) if m[a] == r_t)
    s_lift = min(a for a in range(len(src)) if m[a] == s_t)
    Y = {a for a in range(len(src)) if m[a] in R_t or m[a] in S_t}
    iterations = 0
    while True:
        iterations += 1
        gens = sorted(Y)
        R_new = _rack_orbit(src, gens, r_lift)
        S_new = _rack_orbit(src, gens, s_lift)
        Y_new = R_new | S_new
        if not Y_new <= Y:
            raise AssertionError("pullback iteration failed to decrease")
        if Y_new == Y:
            break
        Y = Y_new
    stats["iterations"] = iterations
    R_fin = sorted(R_new)
    S_fin = sorted(S_new)
    _check_rackside_c(src, R_fin, S_fin, r_lift, s_lift)
    if len(R_fin) < len(witness.orbit_r) or len(S_fin) < len(witness.orbit_s):
        raise AssertionError("pulled-back orbit smaller than the original")
    return WitnessC(
        r=src.carrier[r_lift], s=src.carrier[s_lift],
        subgroup_gens=None,
        orbit_r=tuple(src.carrier[a] for a in R_fin),
        orbit_s=tuple(src.carrier[a] for a in S_fin),
        odd_shortcut=False,
    )


def _check_rackside_c(rk, R, S, r_idx, s_idx):
    """Decomposable-subrack witness conditions, entirely table-side."""
    Rset = set(R)
    Sset = set(S)
    if Rset & Sset:
        raise AssertionError("witness pieces are not disjoint")
    if r_idx not in Rset or s_idx not in Sset:
        raise AssertionError("base points outside their pieces")
    op = rk.op
    inv_op = rk.inv_op
    if op[r_idx][s_idx] == s_idx:
        raise AssertionError("base points commute")
    both = sorted(Rset | Sset)
    for a in both:
        for b in both:
            for c in (op[a][b], inv_op[a][b]):
                if b in Rset and c not in Rset:
                    raise AssertionError("piece R is not stable")
                if b in Sset and c not in Sset:
                    raise AssertionError("piece S is not stable")
    mn = min(len(Rset), len(Sset))
    mx = max(len(Rset), len(Sset))
    if not (mn > 2 or mx > 4):
        raise AssertionError("size conditions fail")


# ---------------------------------------------------------------------------
# bounded two-generated exhaustion

def austere_check(rack, pair_budget=_PAIR_BUDGET):
    """Tests every 2-generated subrack for abelian-or-indecomposable.

    Scans unordered pairs in index order up to pair_budget.  A counterexample
    is conclusive (complete=True, passed=False); exhausting the budget first
    leaves the report truncated (complete=False, passed=True-so-far).
    """
    n = len(rack)
    total = n * (n - 1) // 2
    checked = 0
    for i in range(n):
        for j in range(i + 1, n):
            if checked >= pair_budget:
                return {
                    "passed": True, "complete": False,
                    "pairs_checked": checked, "total_pairs": total,
                    "counterexample": None,
                }
            checked += 1
            sub = subrack_closure({i, j}, rack)
            if not (is_abelian(sub) or is_indecomposable(sub)):
                return {
                    "passed": False, "complete": True,
                    "pairs_checked": checked, "total_pairs": total,
                    "counterexample": (rack.carrier[i], rack.carrier[j]),
                }
    return {
        "passed": True, "complete": True,
        "pairs_checked": checked, "total_pairs": total,
        "counterexample": None,
    }


# ---------------------------------------------------------------------------
# abelian-subrack screen

def quasi_real_data(c):
    """Power data of the class base point: realness and quasi-real witnesses.

    j-witnesses are all j mod ord(x) with x^j in the class and x^j != x;
    j_squared_escapes records whether some witness j has x^(j^2) != x.
    """
    ops = c.ops
    x = ops.canon(c.base)
    ident = ops.identity_of(x)
    if x == ident:
        raise ValueError("base point is the identity")
    powers = [ident]
    cur = x
    while cur != ident:
        powers.append(cur)
        cur = ops.canon(ops.mul(cur, x))
    order = len(powers)
    # powers[j] = x^j for j in 0..order-1 (powers[0] = identity)
    js = tuple(j for j in range(order)
               if powers[j] in c and powers[j] != x)
    escapes = any(powers[(j * j) % order] != x for j in js)
    return {
        "real": powers[order - 1] in c,
        "j_witnesses": js,
        "j_squared_escapes": escapes,
        "order": order,
    }


def abelian_screen(data, order, torus_order=None):
    """Coarse screen from power data.

    AllRepsInfinite: quasi-real with an escaping j^2 at odd order;
    NeedsRhoMinusOne: real, or quasi-real at even order;
    Inconclusive: otherwise.  A torus order, when supplied, must be a
    multiple of the element order (its parity then constrains the branch).
    """
    if torus_order is not None and torus_order % order != 0:
        raise ValueError(
            "element order %d does not divide torus order %d"
            % (order, torus_order))
    quasi = bool(data["j_witnesses"])
    if quasi and data["j_squared_escapes"] and order % 2 == 1:
        return ALL_REPS_INFINITE
    if data["real"] or (quasi and order % 2 == 0):
        return NEEDS_RHO_MINUS_ONE
    return INCONCLUSIVE


# ---------------------------------------------------------------------------
# orchestration and serialization

def run_all_checks(rack, f_bound=_F_BOUND, lattice_cap=_LATTICE_CAP,
                   group_cap=_GROUP_CAP):
    """Runs D, then C, then F; returns the first witness as a Verdict."""
    bounds = {}
    d_stats = {}
    w = check_type_d(rack, group_cap=group_cap, stats=d_stats)
    bounds["type_d"] = d_stats
    if w is not None:
        return Verdict("TypeD", w, bounds)
    c_stats = {}
    w = check_type_c(rack, lattice_cap=lattice_cap, group_cap=group_cap,
                     stats=c_stats)
    bounds["type_c"] = c_stats
    if w is not None:
        return Verdict("TypeC", w, bounds)
    f_stats = {}
    w = check_type_f(rack, bound=f_bound, stats=f_stats)
    bounds["type_f"] = f_stats
    if w is not None:
        return Verdict("TypeF", w, bounds)
    return Verdict("NoWitnessWithinBounds", None, bounds)


def _elem_text(x):
    try:
        from .matgrp import Matrix, mat_text
        if isinstance(x, Matrix):
            return mat_text(x)
    except ImportError:  # pragma: no cover
        pass
    return str(x)


def witness_to_json(witness, class_id="", bounds=None, complete=True):
    """JSON-ready dict: type, class id, elements, generators, orbit sizes."""
    if isinstance(witness, WitnessD):
        kind = "TypeD"
        elements = [witness.r, witness.s]
        gens = [witness.r, witness.s]
        sizes = list(witness.orbit_sizes)
    elif isinstance(witness, WitnessF):
        kind = "TypeF"
        elements = list(witness.elements)
        gens = list(witness.elements)
        sizes = list(witness.orbit_sizes)
    elif isinstance(witness, WitnessC):
        kind = "TypeC"
        elements = [witness.r, witness.s]
        gens = list(witness.subgroup_gens or [])
        sizes = list(witness.orbit_sizes)
    else:
        raise ValueError("unknown witness kind")
    return {
        "type": kind,
        "class_id": class_id,
        "elements": [_elem_text(x) for x in elements],
        "subgroup_generators": [_elem_text(x) for x in gens],
        "orbit_sizes": sizes,
        "bounds": dict(bounds or {}),
        "complete": bool(complete),
    }
