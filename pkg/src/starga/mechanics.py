"""Phase-space geometric algebra and the regularised Kepler problem.

The symbolic half: the symplectic bivector j = sum eta_n rho_n, Hamilton
fields, a Poisson bracket computed purely through star-product contractions,
and the quadratic spinor map u -> r with its velocity/momentum companions,
validated against the equivalent 4x4 matrix form.

The numeric half: fixed-step RK4 integrators for the Kepler orbit, either
directly in Cartesian coordinates (the inverse-square force) or as the
regularised four-dimensional oscillator in fictitious time s with dt/ds = r.
Units are m = k = 1 and initial conditions start at apoapsis of an (e, a)
ellipse; the spinor gauge is fixed by u4 = 0 at s = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .scalars import (
    C, Coefficient, ONE, ZERO, substitute, sym,
)
from .grassmann import (
    AlgebraSpec, Multivector, clifford_star, grade_project, grassmann_product,
    involution, sigma_algebra,
)
from .geometric import inner, star_many


class UnknownKind(ValueError):
    pass


class InvalidOrbitParams(ValueError):
    pass


# ---------------------------------------------------------------------------
# phase-space geometric algebra
# ---------------------------------------------------------------------------

def eta(algebra: AlgebraSpec, n: int) -> Multivector:
    return algebra.generator(n)


def rho(algebra: AlgebraSpec, n: int) -> Multivector:
    return algebra.generator(algebra.dimension // 2 + n)


def symplectic_bivector(algebra: AlgebraSpec) -> Multivector:
    """j = sum_n eta_n rho_n relating position and momentum directions."""
    d = algebra.dimension // 2
    j = algebra.zero()
    for n in range(d):
        j = j + grassmann_product(eta(algebra, n), rho(algebra, n))
    return j


def gradient(f: Coefficient, algebra: AlgebraSpec,
             pairs: Optional[Sequence] = None) -> Multivector:
    """nabla_x f = sum_n (eta_n df/dq_n + rho_n df/dp_n).

    `pairs` names the conjugate coordinate pair behind each (eta_n, rho_n)
    frame pair; defaults to (q1, p1), (q2, p2), ...
    """
    d = algebra.dimension // 2
    if pairs is None:
        pairs = [(f"q{n+1}", f"p{n+1}") for n in range(d)]
    out = algebra.zero()
    for n in range(d):
        out = out + eta(algebra, n) * f.diff(pairs[n][0]) \
            + rho(algebra, n) * f.diff(pairs[n][1])
    return out


def hamilton_field(h: Coefficient, algebra: AlgebraSpec,
                   pairs: Optional[Sequence] = None) -> Multivector:
    """xdot = j . (nabla_x H)."""
    return inner(symplectic_bivector(algebra), gradient(h, algebra, pairs))


def poisson_ga(f: Coefficient, g: Coefficient, algebra: AlgebraSpec) -> Coefficient:
    """{f, g} evaluated through the contraction f (nabla<- . jnabla->) g.

    This route uses only star-product inner products of the phase-space frame
    vectors, independent of any bidifferential expansion.
    """
    d = algebra.dimension // 2
    j = symplectic_bivector(algebra)
    frame = [eta(algebra, n) for n in range(d)] + [rho(algebra, n) for n in range(d)]
    tilde = [inner(j, v) for v in frame]
    names = [f"q{n+1}" for n in range(d)] + [f"p{n+1}" for n in range(d)]
    total = ZERO
    for a in range(2 * d):
        dfa = f.diff(names[a])
        if dfa.is_zero():
            continue
        for b in range(2 * d):
            metric = inner(frame[a], tilde[b]).scalar_part()
            if metric.is_zero():
                continue
            total = total + dfa * metric * g.diff(names[b])
    return total


# ---------------------------------------------------------------------------
# the quadratic spinor map and its matrix form
# ---------------------------------------------------------------------------

def ks_matrix(u: Sequence) -> tuple:
    """The 4x4 matrix L_u of the position map r = L_u u (works on floats too)."""
    u1, u2, u3, u4 = u
    return ((u1, u2, -u3, -u4),
            (-u4, u3, u2, -u1),
            (u3, u4, u1, u2),
            (-u2, u1, -u4, u3))


def mat_vec(m: Sequence, v: Sequence) -> tuple:
    return tuple(sum(row[i] * v[i] for i in range(len(v))) for row in m)


def ks_spinor(components: Sequence, algebra: Optional[AlgebraSpec] = None) -> Multivector:
    """u1 + u2 s2s3 + u3 s3s1 + u4 s1s2 in the Euclidean 3-space algebra."""
    alg = algebra if algebra is not None else sigma_algebra(3)
    u1, u2, u3, u4 = [C(x) for x in components]
    return (alg.scalar(u1) + alg.blade([1, 2], u2)
            + alg.blade([2, 0], u3) + alg.blade([0, 1], u4))


@dataclass(frozen=True)
class KSPosition:
    vector: tuple            # grade-1 components of U * s1 * rev(U)
    matrix_vector: tuple     # all four rows of L_u u
    pseudoscalar_part: Multivector
    consistent: bool


def ks_position(components: Sequence, algebra: Optional[AlgebraSpec] = None) -> KSPosition:
    """Position by the spinor sandwich and independently by the matrix map."""
    alg = algebra if algebra is not None else sigma_algebra(3)
    u = [C(x) for x in components]
    spinor = ks_spinor(u, alg)
    r_mv = star_many(spinor, alg.generator(0), involution(spinor))
    vec = tuple(r_mv.component(i) for i in range(3))
    mat = mat_vec(ks_matrix(u), u)
    grade3 = grade_project(r_mv, 3)
    consistent = (all(vec[i] == mat[i] for i in range(3))
                  and mat[3].is_zero() and grade3.is_zero())
    return KSPosition(vec, mat, grade3, consistent)


def _u_symbols() -> list:
    return [sym(f"u{i}") for i in range(1, 5)]


def _udot_symbols() -> list:
    return [sym(f"udot{i}") for i in range(1, 5)]


def _w_symbols() -> list:
    return [sym(f"w{i}") for i in range(1, 5)]


def constraint_expression(u: Sequence, udot: Sequence) -> Coefficient:
    """-u2 du1 + u1 du2 - u4 du3 + u3 du4: the vanishing fourth velocity row."""
    u1, u2, u3, u4 = [C(x) for x in u]
    d1, d2, d3, d4 = [C(x) for x in udot]
    return -u2 * d1 + u1 * d2 - u4 * d3 + u3 * d4


def _constraint_bindings(u: Sequence, udot_names: Sequence[str]) -> dict:
    """Solve the constraint for the second velocity component."""
    u1, u2, u3, u4 = [C(x) for x in u]
    d1, d3, d4 = sym(udot_names[0]), sym(udot_names[2]), sym(udot_names[3])
    return {udot_names[1]: (u2 * d1 + u4 * d3 - u3 * d4) / u1}


def ks_map(kind: str, algebra: Optional[AlgebraSpec] = None) -> dict:
    """Symbolic verification of one relation of the quadratic spinor map.

    kind in {velocity, inverse_velocity, momentum, p4, constraint}; returns a
    dict of the computed expressions with a ``consistent`` flag.
    """
    alg = algebra if algebra is not None else sigma_algebra(3)
    u = _u_symbols()
    s1 = alg.generator(0)
    spinor = ks_spinor(u, alg)
    r = u[0] ** 2 + u[1] ** 2 + u[2] ** 2 + u[3] ** 2

    if kind == "velocity":
        udot = _udot_symbols()
        dspinor = ks_spinor(udot, alg)
        lhs = star_many(dspinor, s1, involution(spinor)) \
            + star_many(spinor, s1, involution(dspinor))
        mat = mat_vec(ks_matrix(u), udot)
        rows_match = all(lhs.component(i) == 2 * mat[i] for i in range(3))
        chi = constraint_expression(u, udot)
        fourth_is_constraint = (2 * mat[3] == 2 * chi)
        return {
            "ga_vector": lhs,
            "matrix_vector": tuple(2 * mat[i] for i in range(4)),
            "constraint": chi,
            "consistent": rows_match and fourth_is_constraint
                          and lhs.grades() <= {1},
        }

    if kind == "inverse_velocity":
        udot = _udot_symbols()
        names = [f"udot{i}" for i in range(1, 5)]
        dspinor = ks_spinor(udot, alg)
        rdot = star_many(dspinor, s1, involution(spinor)) \
            + star_many(spinor, s1, involution(dspinor))
        recovered = star_many(rdot, spinor, s1) * (ONE / (2 * r))
        bindings = _constraint_bindings(u, names)
        reduce_ = lambda mv: mv.map_coefficients(lambda c: substitute(c, bindings))
        consistent = reduce_(recovered) == reduce_(dspinor)
        return {"recovered": recovered, "spinor_dot": dspinor,
                "consistent": consistent}

    if kind == "momentum":
        w = _w_symbols()
        wspinor = ks_spinor(w, alg)
        polar = star_many(wspinor, s1, involution(spinor)) \
            + star_many(spinor, s1, involution(wspinor))
        p_ga = polar * (ONE / (4 * r))
        mat = mat_vec(ks_matrix(u), w)
        p_mat = tuple(m / (2 * r) for m in mat)
        p4 = p_mat[3]
        w_sq = w[0] ** 2 + w[1] ** 2 + w[2] ** 2 + w[3] ** 2
        p_sq = clifford_star(grade_project(p_ga, 1), grade_project(p_ga, 1)).scalar_part()
        squared_ok = (p_sq == w_sq / (4 * r) - p4 ** 2)
        routes_match = all(p_ga.component(i) == p_mat[i] for i in range(3))
        return {
            "ga_vector": p_ga,
            "matrix_vector": p_mat,
            "p4": p4,
            "momentum_square": p_sq,
            "ga_prefactor_inverse": 4 * r,
            "matrix_prefactor_inverse": 2 * r,
            "consistent": squared_ok and routes_match,
        }

    if kind == "p4":
        w = _w_symbols()
        p4 = (u[0] * w[1] - u[1] * w[0] + u[2] * w[3] - u[3] * w[2]) / (2 * r)
        names = [f"udot{i}" for i in range(1, 5)]
        on_motion = substitute(p4, {f"w{i}": sym("m") * sym(f"udot{i}")
                                    for i in range(1, 5)})
        constrained = substitute(on_motion, _constraint_bindings(u, names))
        return {"p4": p4, "with_constraint": constrained,
                "consistent": constrained.is_zero()}

    if kind == "constraint":
        udot = _udot_symbols()
        dspinor = ks_spinor(udot, alg)
        x = star_many(dspinor, s1, involution(spinor))
        asym = x - star_many(spinor, s1, involution(dspinor))
        chi = constraint_expression(u, udot)
        # the failing part of the velocity identity is the pseudoscalar part
        pseudo = grade_project(asym, 3).coefficient(0b111)
        # r4 = fourth row of L_u u vanishes identically, so its s-derivative
        # (by the product rule) must too
        r4_rate = mat_vec(ks_matrix(udot), u)[3] + mat_vec(ks_matrix(u), udot)[3]
        return {"expression": chi, "pseudoscalar_rate": pseudo,
                "r4_rate": r4_rate,
                "consistent": pseudo == 2 * chi and r4_rate.is_zero()}

    raise UnknownKind(f"unknown ks_map kind: {kind}")


# ---------------------------------------------------------------------------
# the regularised Hamiltonian chain
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RegularizedChain:
    h_kepler: Coefficient      # p^2/2m - k/r
    h_homogeneous: Coefficient  # H + p0
    h_fictitious: Coefficient  # r (H + p0)
    h_transformed: Coefficient  # in (u, w) with the fourth-momentum term
    h_oscillator: Coefficient  # |w|^2/8m + |E| |u|^2 - k
    frequency_squared: Coefficient
    dq0_ds: Coefficient


def regularize_hamiltonian() -> RegularizedChain:
    """Build the chain Kepler -> homogeneous -> fictitious time -> oscillator."""
    m, k, r, p0, energy = sym("m"), sym("k"), sym("r"), sym("p0"), sym("E")
    p_sq = sym("p1") ** 2 + sym("p2") ** 2 + sym("p3") ** 2
    h = p_sq / (2 * m) - k / r
    h1 = h + p0
    h2 = r * h1
    # momentum transform: p^2 = |w|^2/4r - p4^2 (validated by ks_map("momentum"))
    w_sq = sym("w1") ** 2 + sym("w2") ** 2 + sym("w3") ** 2 + sym("w4") ** 2
    u_sq = sym("u1") ** 2 + sym("u2") ** 2 + sym("u3") ** 2 + sym("u4") ** 2
    p4 = sym("p4")
    h3 = r * (w_sq / (4 * r) - p4 ** 2) / (2 * m) - k + r * p0
    h3 = substitute(h3, {"p0": -energy})
    h4 = substitute(h3, {"p4": 0, "E": -sym("Eabs"), "r": u_sq})
    omega_sq = sym("Eabs") / (2 * m)
    return RegularizedChain(
        h_kepler=h,
        h_homogeneous=h1,
        h_fictitious=h2,
        h_transformed=h3,
        h_oscillator=h4,
        frequency_squared=omega_sq,
        dq0_ds=h2.diff("p0"),
    )


# ---------------------------------------------------------------------------
# numeric orbit integration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitState:
    s: float
    t: float
    x: tuple
    v: tuple
    energy: float
    energy_drift: float


def _initial_conditions(eccentricity: float, semi_major_axis: float) -> tuple:
    r0 = semi_major_axis * (1.0 + eccentricity)
    v0 = math.sqrt((1.0 - eccentricity) / (semi_major_axis * (1.0 + eccentricity)))
    energy = -1.0 / (2.0 * semi_major_axis)
    return r0, v0, energy


def _validate(eccentricity, semi_major_axis, steps_per_orbit, orbits) -> None:
    if not 0.0 <= eccentricity < 1.0:
        raise InvalidOrbitParams("eccentricity must satisfy 0 <= e < 1")
    if semi_major_axis <= 0.0:
        raise InvalidOrbitParams("semi-major axis must be positive")
    if steps_per_orbit < 1 or orbits < 1:
        raise InvalidOrbitParams("steps and orbits must be at least 1")


def _newton_run(eccentricity, semi_major_axis, steps_per_orbit, orbits,
                sample_every):
    r0, v0, energy0 = _initial_conditions(eccentricity, semi_major_axis)
    period = 2.0 * math.pi * semi_major_axis ** 1.5
    h = period / steps_per_orbit
    n_steps = steps_per_orbit * orbits
    x, y, z = r0, 0.0, 0.0
    vx, vy, vz = 0.0, v0, 0.0
    t = 0.0
    states = []

    def accel(px, py, pz):
        rr = math.sqrt(px * px + py * py + pz * pz)
        f = -1.0 / (rr * rr * rr)
        return f * px, f * py, f * pz

    def emit():
        rr = math.sqrt(x * x + y * y + z * z)
        en = 0.5 * (vx * vx + vy * vy + vz * vz) - 1.0 / rr
        states.append(OrbitState(t, t, (x, y, z), (vx, vy, vz), en,
                                 abs(en - energy0) / abs(energy0)))

    emit()
    for step in range(n_steps):
        ax1, ay1, az1 = accel(x, y, z)
        k1 = (vx, vy, vz, ax1, ay1, az1)
        ax2, ay2, az2 = accel(x + 0.5 * h * k1[0], y + 0.5 * h * k1[1], z + 0.5 * h * k1[2])
        k2 = (vx + 0.5 * h * ax1, vy + 0.5 * h * ay1, vz + 0.5 * h * az1, ax2, ay2, az2)
        ax3, ay3, az3 = accel(x + 0.5 * h * k2[0], y + 0.5 * h * k2[1], z + 0.5 * h * k2[2])
        k3 = (vx + 0.5 * h * ax2, vy + 0.5 * h * ay2, vz + 0.5 * h * az2, ax3, ay3, az3)
        ax4, ay4, az4 = accel(x + h * k3[0], y + h * k3[1], z + h * k3[2])
        k4 = (vx + h * ax3, vy + h * ay3, vz + h * az3, ax4, ay4, az4)
        x += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        y += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        z += h / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
        vx += h / 6.0 * (k1[3] + 2 * k2[3] + 2 * k3[3] + k4[3])
        vy += h / 6.0 * (k1[4] + 2 * k2[4] + 2 * k3[4] + k4[4])
        vz += h / 6.0 * (k1[5] + 2 * k2[5] + 2 * k3[5] + k4[5])
        t += h
        if (step + 1) % sample_every == 0 or step + 1 == n_steps:
            emit()
    info = {
        "method": "newton",
        "final_drift": states[-1].energy_drift,
        "max_drift": max(st.energy_drift for st in states),
        "t_final": t,
        "step_size": h,
    }
    return states, info


def _ks_run(eccentricity, semi_major_axis, steps_per_orbit, orbits,
            sample_every):
    r0, v0, energy0 = _initial_conditions(eccentricity, semi_major_axis)
    sqrt_r0 = math.sqrt(r0)
    u = [sqrt_r0, 0.0, 0.0, 0.0]
    du = [0.0, 0.0, 0.0, -sqrt_r0 * v0 / 2.0]
    # one Kepler orbit is half a u-oscillation: s spans 2 pi sqrt(a) per orbit
    s_orbit = 2.0 * math.pi * math.sqrt(semi_major_axis)
    h = s_orbit / steps_per_orbit
    n_steps = steps_per_orbit * orbits
    omega_sq = -energy0 / 2.0          # d2u/ds2 = (E/2) u = -omega_sq u
    t = 0.0
    s = 0.0
    states = []
    h4_0 = 2.0 * sum(d * d for d in du) + (-energy0) * sum(c * c for c in u) - 1.0
    h4_max = 0.0

    def emit():
        nonlocal h4_max
        lu = ks_matrix(u)
        pos = mat_vec(lu, u)
        rr = pos[0] ** 2 + pos[1] ** 2 + pos[2] ** 2
        rnorm = math.sqrt(rr)
        dpos = mat_vec(lu, du)
        vel = tuple(2.0 * dpos[i] / rnorm for i in range(3))
        en = 0.5 * sum(c * c for c in vel) - 1.0 / rnorm
        h4 = 2.0 * sum(d * d for d in du) + (-energy0) * sum(c * c for c in u) - 1.0
        h4_max = max(h4_max, abs(h4 - h4_0))
        states.append(OrbitState(s, t, pos[:3], vel, en,
                                 abs(en - energy0) / abs(energy0)))

    emit()
    for step in range(n_steps):
        # RK4 on (u, du, t): u' = du, du' = -omega_sq u, t' = |u|^2
        ku1 = du[:]
        kd1 = [-omega_sq * c for c in u]
        kt1 = sum(c * c for c in u)
        u2_ = [u[i] + 0.5 * h * ku1[i] for i in range(4)]
        d2_ = [du[i] + 0.5 * h * kd1[i] for i in range(4)]
        ku2 = d2_[:]
        kd2 = [-omega_sq * c for c in u2_]
        kt2 = sum(c * c for c in u2_)
        u3_ = [u[i] + 0.5 * h * ku2[i] for i in range(4)]
        d3_ = [du[i] + 0.5 * h * kd2[i] for i in range(4)]
        ku3 = d3_[:]
        kd3 = [-omega_sq * c for c in u3_]
        kt3 = sum(c * c for c in u3_)
        u4_ = [u[i] + h * ku3[i] for i in range(4)]
        d4_ = [du[i] + h * kd3[i] for i in range(4)]
        ku4 = d4_[:]
        kd4 = [-omega_sq * c for c in u4_]
        kt4 = sum(c * c for c in u4_)
        for i in range(4):
            u[i] += h / 6.0 * (ku1[i] + 2 * ku2[i] + 2 * ku3[i] + ku4[i])
            du[i] += h / 6.0 * (kd1[i] + 2 * kd2[i] + 2 * kd3[i] + kd4[i])
        t += h / 6.0 * (kt1 + 2 * kt2 + 2 * kt3 + kt4)
        s += h
        if (step + 1) % sample_every == 0 or step + 1 == n_steps:
            emit()
    info = {
        "method": "ks",
        "final_drift": states[-1].energy_drift,
        "max_drift": max(st.energy_drift for st in states),
        "oscillator_invariant_drift": h4_max,
        "t_final": t,
        "step_size": h,
    }
    return states, info


def kepler_run(method: str, eccentricity: float, semi_major_axis: float,
               steps_per_orbit: int, orbits: int, sample_every: int = 1):
    """Integrate one orbit family; returns (states, info)."""
    _validate(eccentricity, semi_major_axis, steps_per_orbit, orbits)
    if sample_every < 1:
        raise InvalidOrbitParams("sample interval must be >= 1")
    if method == "newton":
        return _newton_run(eccentricity, semi_major_axis, steps_per_orbit,
                           orbits, sample_every)
    if method == "ks":
        return _ks_run(eccentricity, semi_major_axis, steps_per_orbit,
                       orbits, sample_every)
    raise InvalidOrbitParams(f"unknown method: {method}")


def kepler_integrate(method: str, eccentricity: float, semi_major_axis: float,
                     steps_per_orbit: int, orbits: int,
                     sample_every: int = 1) -> list:
    """OrbitState series for one method (see kepler_run for the summary)."""
    return kepler_run(method, eccentricity, semi_major_axis, steps_per_orbit,
                      orbits, sample_every)[0]


def _hermite(tq, t0, h, x0, v0, x1, v1):
    """Cubic Hermite interpolation of position on one step."""
    tau = (tq - t0) / h
    h00 = (1 + 2 * tau) * (1 - tau) ** 2
    h10 = tau * (1 - tau) ** 2
    h01 = tau * tau * (3 - 2 * tau)
    h11 = tau * tau * (tau - 1)
    return tuple(h00 * x0[i] + h10 * h * v0[i] + h01 * x1[i] + h11 * h * v1[i]
                 for i in range(3))


def compare_methods(eccentricity: float, semi_major_axis: float,
                    steps_per_orbit: int, orbits: int) -> dict:
    """Run both integrators and compare positions at the KS sample times.

    The Newton trajectory is interpolated (cubic Hermite on its fixed grid)
    at each regularised-sample time; the figure of merit is the maximum
    relative position difference.
    """
    ks_states, ks_info = kepler_run("ks", eccentricity, semi_major_axis,
                                    steps_per_orbit, orbits)
    nw_states, nw_info = kepler_run("newton", eccentricity, semi_major_axis,
                                    steps_per_orbit, orbits)
    h = nw_info["step_size"]
    t_final = nw_info["t_final"]
    max_rel = 0.0
    for st in ks_states:
        if st.t > t_final:
            break
        idx = min(int(st.t / h), len(nw_states) - 2)
        a, b = nw_states[idx], nw_states[idx + 1]
        if not a.t <= st.t <= b.t:
            # guard against accumulated floating drift of the uniform grid
            while b.t < st.t and idx + 2 < len(nw_states):
                idx += 1
                a, b = nw_states[idx], nw_states[idx + 1]
            while a.t > st.t and idx > 0:
                idx -= 1
                a, b = nw_states[idx], nw_states[idx + 1]
        pos = _hermite(st.t, a.t, h, a.x, a.v, b.x, b.v)
        diff = math.sqrt(sum((pos[i] - st.x[i]) ** 2 for i in range(3)))
        norm = math.sqrt(sum(c * c for c in st.x))
        max_rel = max(max_rel, diff / norm)
    return {
        "max_relative_position_error": max_rel,
        "ks": ks_info,
        "newton": nw_info,
    }
