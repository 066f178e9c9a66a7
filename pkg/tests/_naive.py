"""Brute-force re-derivations used as an independent oracle in tests.

Everything recomputes from the multiplication table using frozensets and
saturation loops. No bitsets, no lattice machinery, no shared helpers with
the package; only the element table itself is common input. Intended for
groups of order <= 48.
"""

from __future__ import annotations


def closure(mul, seed) -> frozenset:
    cur = {0} | set(seed)
    changed = True
    while changed:
        changed = False
        for a in list(cur):
            for b in list(cur):
                c = mul[a][b]
                if c not in cur:
                    cur.add(c)
                    changed = True
    return frozenset(cur)


def subgroups(group) -> set[frozenset]:
    """Every subgroup, by extending known subgroups one generator at a time."""
    mul = group.mul
    found = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        fresh = []
        for h in frontier:
            for g in range(1, group.order):
                if g in h:
                    continue
                k = closure(mul, set(h) | {g})
                if k not in found:
                    found.add(k)
                    fresh.append(k)
        frontier = fresh
    return found


def element_order(group, x: int) -> int:
    mul = group.mul
    n, y = 1, x
    while y != 0:
        y = mul[y][x]
        n += 1
    return n


def conj(group, g: int, x: int) -> int:
    mul = group.mul
    return mul[mul[g][x]][group.inv[g]]


def conj_set(group, g: int, h: frozenset) -> frozenset:
    return frozenset(conj(group, g, x) for x in h)


def normalizer(group, h: frozenset) -> frozenset:
    return frozenset(g for g in range(group.order)
                     if conj_set(group, g, h) == h)


def centralizer(group, h: frozenset) -> frozenset:
    mul = group.mul
    return frozenset(g for g in range(group.order)
                     if all(mul[g][x] == mul[x][g] for x in h))


def center(group, h: frozenset) -> frozenset:
    return h & centralizer(group, h)


def is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def is_abelian(group, h: frozenset) -> bool:
    mul = group.mul
    return all(mul[x][y] == mul[y][x] for x in h for y in h)


def is_elementary_abelian(group, h: frozenset, p: int) -> bool:
    return (len(h) > 1 and is_p_power(len(h), p) and is_abelian(group, h)
            and all(element_order(group, x) == p for x in h if x))


def p_core(group, all_subs, h: frozenset, p: int) -> frozenset:
    """Largest normal p-subgroup of h; checked to contain every candidate."""
    candidates = [k for k in all_subs
                  if k <= h and is_p_power(len(k), p)
                  and all(conj_set(group, g, k) == k for g in h)]
    best = max(candidates, key=len)
    assert all(k <= best for k in candidates), "p-core is not unique-maximal"
    return best


def is_radical(group, all_subs, h: frozenset, p: int) -> bool:
    return p_core(group, all_subs, normalizer(group, h), p) == h


def is_centric(group, h: frozenset, p: int) -> bool:
    return len(center(group, h)) == p_part(len(centralizer(group, h)), p)


def is_principal_radical(group, all_subs, h: frozenset, p: int) -> bool:
    """p-centric, and the p-core of N_G(h)/(h * C_G(h)) is trivial; the
    quotient is read off through the correspondence with subgroups between
    h*C_G(h) and N_G(h)."""
    if not is_centric(group, h, p):
        return False
    mul = group.mul
    n = normalizer(group, h)
    pc = closure(mul, h | centralizer(group, h))
    over = [k for k in all_subs
            if pc <= k <= n and is_p_power(len(k) // len(pc), p)
            and all(conj_set(group, g, k) == k for g in n)]
    return max(len(k) for k in over) == len(pc)


def sylows(group, all_subs, p: int) -> list[frozenset]:
    full = p_part(group.order, p)
    return [h for h in all_subs if len(h) == full]


def E0(group, all_subs, p: int) -> frozenset:
    out = set()
    for s in sylows(group, all_subs, p):
        for x in center(group, s):
            if element_order(group, x) == p:
                out.add(x)
    return frozenset(out)


def E1(group, e0: frozenset, p: int) -> frozenset:
    mul = group.mul
    cur = set(e0)
    changed = True
    while changed:
        changed = False
        for x in list(cur):
            for g in range(group.order):
                y = conj(group, g, x)
                if y not in cur:
                    cur.add(y)
                    changed = True
        for x in list(cur):
            for y in list(cur):
                if mul[x][y] != mul[y][x]:
                    continue
                z = mul[x][y]
                if z and element_order(group, z) == p and z not in cur:
                    cur.add(z)
                    changed = True
    return frozenset(cur)


def omega1_center(group, h: frozenset, p: int) -> frozenset:
    gens = {x for x in center(group, h) if element_order(group, x) == p}
    return closure(group.mul, gens)


def tilde(group, h: frozenset, p: int, e1: frozenset) -> frozenset:
    cut = {x for x in omega1_center(group, h, p) if x in e1} | {0}
    assert closure(group.mul, cut) == frozenset(cut), "tilde set is not a subgroup"
    return frozenset(cut)


def hat(group, h: frozenset, p: int, e0: frozenset) -> frozenset:
    return closure(group.mul, {x for x in omega1_center(group, h, p) if x in e0})


def collection(group, all_subs, p: int, kind: str) -> set[frozenset]:
    """Member sets of each collection kind, straight from the definitions."""
    psubs = [h for h in all_subs if len(h) > 1 and is_p_power(len(h), p)]
    e0 = E0(group, all_subs, p)
    e1 = E1(group, e0, p)
    if kind.startswith("tilde-"):
        return {h for h in collection(group, all_subs, p, kind[6:])
                if len(tilde(group, h, p, e1)) > 1}
    if kind.startswith("hat-"):
        return {h for h in collection(group, all_subs, p, kind[4:])
                if len(hat(group, h, p, e0)) > 1}
    if kind == "S":
        return set(psubs)
    if kind == "A":
        return {h for h in psubs if is_elementary_abelian(group, h, p)}
    if kind == "B":
        return {h for h in psubs if is_radical(group, all_subs, h, p)}
    if kind == "Ce":
        return {h for h in psubs if is_centric(group, h, p)}
    if kind == "Bcen":
        return {h for h in psubs if is_centric(group, h, p)
                and is_radical(group, all_subs, h, p)}
    if kind == "D":
        return {h for h in psubs
                if is_principal_radical(group, all_subs, h, p)}
    if kind == "E":
        return {h for h in psubs if is_elementary_abelian(group, h, p)
                and all(x in e1 for x in h if x)}
    raise ValueError(kind)
