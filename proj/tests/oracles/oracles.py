"""Independent reference values for the C++ test suite.

Pure-Python arithmetic, written separately from the library. The numbers
printed here are frozen as constants in tests/unit and tests/acceptance;
rerun this script after any change to the definitions they encode.
"""
import itertools
import json
import math


def se_pulls(budget, batch, n, delta):
    d1 = 3 * delta / math.pi**2
    return math.ceil(budget * math.log(batch**2 * n / d1))


def h_index(deltas):
    return sum(1 / d**2 for d in deltas)


def mab_recursion(deltas):
    """Returns (R_I, alpha) for sorted suboptimal gaps."""
    n = len(deltas) + 1
    lbar, used, r, sets = 1.0, set(), 0, [frozenset()]
    while len(used) < n - 1:
        r += 1
        lbar = 4 * lbar + sum(1 / deltas[j] ** 2 for j in used) / (n - len(used))
        used = {j for j, d in enumerate(deltas) if d >= 15 * math.sqrt(2) / math.sqrt(lbar)}
        sets.append(frozenset(used))
    alpha = sum(1 for a, b in zip(sets, sets[1:]) if a != b)
    return r, alpha


def grid_bound(delta2):
    return math.ceil(math.log(450 / delta2**2, 4)) + 1


def ex1(n):
    return [0.5] * (n - 2) + [1 / math.sqrt(n)]


def simplex_grid(n, step):
    k = round(1 / step)
    for parts in itertools.product(range(1, k), repeat=n - 1):
        last = k - sum(parts)
        if last >= 1:
            yield [p / k for p in parts] + [last / k]


def basis_rho_grid(n, step=0.01):
    """min over the simplex of max_{i != j} 1/l_i + 1/l_j."""
    best = math.inf
    for lam in simplex_grid(n, step):
        s = sorted(lam)
        best = min(best, 1 / s[0] + 1 / s[1])
    return best


def basis_psi_grid(means, step=0.01):
    """psi* for basis arms: max_x (1/l_best + 1/l_x) / gap_x^2."""
    b = max(range(len(means)), key=lambda i: means[i])
    best = math.inf
    for lam in simplex_grid(len(means), step):
        val = max((1 / lam[b] + 1 / lam[i]) / (means[b] - means[i]) ** 2
                  for i in range(len(means)) if i != b)
        best = min(best, val)
    return best


def linear_two_arm_ri(gap):
    t = 1
    while not gap > 15 * 2.0**-t:
        t += 1
    return t


def rage_budget(rho, budget, survivors, batch, delta, d):
    return max(math.ceil(4 * max(2 * math.log(survivors**2 * batch**2 / delta) * rho * budget, d)), d + 1)


out = {
    "se_pulls_n2": se_pulls(4, 1, 2, 0.1),
    "se_L2": 4 * 4 + (25 / 9) * (1 / 2) * 1.0,
    "h_index": [h_index([0.5]), h_index([0.5, 1.0]), h_index(ex1(100))],
    "ri_two_arm": mab_recursion([1.0])[0],
    "ri_ex1": {n: mab_recursion(ex1(n)) for n in (64, 4096)},
    "grid_bound_ex1": {n: grid_bound(1 / math.sqrt(n)) for n in (64, 4096)},
    "linear_ri_two_arm": linear_two_arm_ri(1.0),
    "basis_rho_grid_n3": basis_rho_grid(3),
    "psi_grid_ex1_n3": basis_psi_grid([0.5, 0.0, 0.5 - 1 / math.sqrt(3)]),
    "rage_N1_basis4": rage_budget(8.0, 4.0, 4, 1, 0.1, 4),
}
print(json.dumps(out, indent=2))
