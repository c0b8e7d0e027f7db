"""U_q sl(2) as concrete Hopf data acting on the two-mode Fock space.

The quantum-group generators are realized by the deformed
Jordan-Schwinger bilinears

    sigma_q(E) = adag_1 a^2,  sigma_q(F) = adag_2 a^1,
    sigma_q(K) = q^(n_1 - n_2),

whose defining relations hold exactly on fermionic Fock space because
n_1 - n_2 only takes the values -1, 0, 1 there.  The adjoint action is

    x |> a  =  sigma_q(x_(1)) . a . sigma_q(S x_(2)),

summed over the coproduct.  Two mirror-image coproduct conventions exist;
the covariance of the dressed generators under the fixed fundamental
representation rho_q(K) = diag(q, q^-1) is the arbiter, and it selects

    D(E) = E @ 1 + K @ E,    D(F) = F @ Kinv + 1 @ F,    D(K) = K @ K,
    S(E) = -Kinv E,          S(F) = -F K,                S(K) = Kinv.

The rejected mirror convention stays available as a negative control.
Invariance checkers compare x |> I against eps(x) I for both the
deformed action and the classical commutator action, and the closed-form
identity relating the deformed quadratic invariant to the classical one
is verified eigenvalue by eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import fock
from .deform import GeneratorSet, build_deforming_map, undeformed_set
from .fock import FockOperator, build_generators
from .report import RelationReport
from .scalar import ONE, Q, RationalFunction, ZERO, q_number


#: convention tags: names describe the E-coproduct shape
FROZEN_CONVENTION = "E@1+K@E"
MIRROR_CONVENTION = "E@K+1@E"

_TABLES = {
    FROZEN_CONVENTION: {
        "coproduct": {
            "E": [(("E",), ()), (("K",), ("E",))],
            "F": [(("F",), ("Kinv",)), ((), ("F",))],
            "K": [(("K",), ("K",))],
            "Kinv": [(("Kinv",), ("Kinv",))],
        },
        "antipode": {
            "E": (-1, ("Kinv", "E")),
            "F": (-1, ("F", "K")),
            "K": (1, ("Kinv",)),
            "Kinv": (1, ("K",)),
        },
    },
    MIRROR_CONVENTION: {
        "coproduct": {
            "E": [(("E",), ("K",)), ((), ("E",))],
            "F": [(("F",), ()), (("Kinv",), ("F",))],
            "K": [(("K",), ("K",))],
            "Kinv": [(("Kinv",), ("Kinv",))],
        },
        "antipode": {
            "E": (-1, ("E", "Kinv")),
            "F": (-1, ("K", "F")),
            "K": (1, ("Kinv",)),
            "Kinv": (1, ("K",)),
        },
    },
}

GENERATOR_NAMES = ("E", "F", "K")


@dataclass
class HopfAlgebraData:
    """Generator table for U_q sl(2) together with its Fock realization."""

    q_scalar: RationalFunction
    sigma: dict          # name -> FockOperator image
    rho: dict            # name -> 2x2 matrix (tuple of tuples) over Q(q)
    coproduct: dict      # name -> list of (left word, right word)
    counit: dict         # name -> RationalFunction
    antipode: dict       # name -> (sign, word)
    convention: str

    def sigma_word(self, word) -> FockOperator:
        op = fock.identity(2)
        for name in word:
            op = op * self.sigma[name]
        return op

    def rho_word(self, word):
        mat = ((ONE, ZERO), (ZERO, ONE))
        for name in word:
            mat = _mul2(mat, self.rho[name])
        return mat

    def counit_word(self, word) -> RationalFunction:
        value = ONE
        for name in word:
            value = value * self.counit[name]
        return value

    def antipode_word(self, word):
        """S applied as an antihomomorphism: (sign, word)."""
        sign = 1
        out: tuple = ()
        for name in reversed(word):
            s, w = self.antipode[name]
            sign *= s
            out = out + w
        return sign, out

    def coproduct_word(self, word):
        """Expand D(word) as a list of (left word, right word) pairs."""
        pairs = [((), ())]
        for name in word:
            pairs = [(l1 + l2, r1 + r2)
                     for (l1, r1) in pairs
                     for (l2, r2) in self.coproduct[name]]
        return pairs


def _mul2(a, b):
    return tuple(
        tuple(sum((a[r][k] * b[k][c] for k in range(2)), ZERO)
              for c in range(2))
        for r in range(2))


def _weight_diagonal(q_scalar: RationalFunction, exponent_sign: int) -> FockOperator:
    """Diagonal q^(sign * (n_1 - n_2)) on the two-mode space."""
    rows = []
    for state in range(4):
        m = ((state >> 1) & 1) - (state & 1)
        rows.append({state: q_scalar ** (exponent_sign * m)})
    return FockOperator(2, rows)


def deformed_js(q_scalar: RationalFunction = Q,
                convention: str = FROZEN_CONVENTION) -> HopfAlgebraData:
    """Build the deformed Jordan-Schwinger data and self-check it.

    The defining relations K E Kinv = q^2 E, K F Kinv = q^-2 F,
    [E, F] = (K - Kinv)/(q - q^-1) and K Kinv = 1 are verified as exact
    matrix identities before the data is returned.
    """
    pairs = build_generators(2)
    sigma = {
        "E": pairs[0][0] * pairs[1][1],
        "F": pairs[1][0] * pairs[0][1],
        "K": _weight_diagonal(q_scalar, +1),
        "Kinv": _weight_diagonal(q_scalar, -1),
    }
    rho = {
        "E": ((ZERO, ONE), (ZERO, ZERO)),
        "F": ((ZERO, ZERO), (ONE, ZERO)),
        "K": ((q_scalar, ZERO), (ZERO, q_scalar ** -1)),
        "Kinv": ((q_scalar ** -1, ZERO), (ZERO, q_scalar)),
    }
    tables = _TABLES[convention]
    data = HopfAlgebraData(
        q_scalar=q_scalar,
        sigma=sigma,
        rho=rho,
        coproduct=tables["coproduct"],
        counit={"E": ZERO, "F": ZERO, "K": ONE, "Kinv": ONE},
        antipode=tables["antipode"],
        convention=convention,
    )
    _self_check(data)
    return data


def _self_check(data: HopfAlgebraData) -> None:
    q0 = data.q_scalar
    E, F, K, Kinv = (data.sigma[n] for n in ("E", "F", "K", "Kinv"))
    ident = fock.identity(2)
    if K * Kinv != ident:
        raise ValueError("K Kinv = 1 fails")
    if K * E * Kinv != E.scale(q0 * q0):
        raise ValueError("K E Kinv = q^2 E fails")
    if K * F * Kinv != F.scale(q0 ** -2):
        raise ValueError("K F Kinv = q^-2 F fails")
    bracket = E * F - F * E
    gap = q0 - q0 ** -1
    if gap.is_zero:
        # degenerate point (q = +-1): the bracket is the bare weight diagonal
        expected = fock.zero(2)
        for state in range(4):
            m = ((state >> 1) & 1) - (state & 1)
            if m:
                expected = expected + FockOperator(2, [({state: ONE * m}
                                                        if s == state else {})
                                                       for s in range(4)])
        if bracket != expected:
            raise ValueError("[E, F] classical limit fails")
    elif bracket != (K - Kinv).scale(gap ** -1):
        raise ValueError("[E, F] = (K - Kinv)/(q - q^-1) fails")


# ---------------------------------------------------------------------------
# actions
# ---------------------------------------------------------------------------

def act(x, a: FockOperator, data: HopfAlgebraData) -> FockOperator:
    """Adjoint action of a generator monomial: sandwich through the
    coproduct with the antipode on the right leg."""
    word = (x,) if isinstance(x, str) else tuple(x)
    total = fock.zero(a.n_modes)
    for left, right in data.coproduct_word(word):
        sign, s_word = data.antipode_word(right)
        term = data.sigma_word(left) * a * data.sigma_word(s_word)
        total = total + (term if sign > 0 else -term)
    return total


def classical_js(n_modes: int = 2) -> dict:
    """The su(2) bilinears j+, j-, j0 on the two-mode Fock space."""
    if n_modes != 2:
        raise ValueError("the classical bilinears are built for two modes")
    pairs = build_generators(2)
    half = RationalFunction.from_fraction(Fraction(1, 2))
    return {
        "j+": pairs[0][0] * pairs[1][1],
        "j-": pairs[1][0] * pairs[0][1],
        "j0": (fock.number_op(2, 1) - fock.number_op(2, 2)).scale(half),
    }


def classical_act(name: str, a: FockOperator, js: dict) -> FockOperator:
    """Commutator action of a classical generator."""
    g = js[name]
    return g * a - a * g


# ---------------------------------------------------------------------------
# checkers
# ---------------------------------------------------------------------------

def check_module_algebra(data: HopfAlgebraData,
                         gens: GeneratorSet) -> list[RelationReport]:
    """Module-algebra axioms on all generator pairs and sample products.

    Checks (xy) |> a = x |> (y |> a) for x, y in {E, F, K} with a ranging
    over the given generators, and the deformed Leibniz rule
    x |> (ab) = sum (x_(1) |> a)(x_(2) |> b) on all pairs a, b.
    """
    samples = _labelled_generators(gens)
    reports = []
    for x, y in product(GENERATOR_NAMES, repeat=2):
        for label, a in samples:
            lhs = act((x, y), a, data)
            rhs = act(x, act(y, a, data), data)
            res = lhs - rhs
            reports.append(RelationReport(
                family="module-assoc", indices=(x, y, label),
                relation=f"({x}{y}) |> {label} = {x} |> ({y} |> {label})",
                residual=res, exact_zero=res.is_zero))
    for x in GENERATOR_NAMES:
        for (la, a), (lb, b) in product(samples, repeat=2):
            lhs = act(x, a * b, data)
            rhs = fock.zero(gens.modes)
            for left, right in data.coproduct_word((x,)):
                rhs = rhs + act(left, a, data) * act(right, b, data)
            res = lhs - rhs
            reports.append(RelationReport(
                family="module-leibniz", indices=(x, la, lb),
                relation=f"{x} |> ({la}.{lb}) obeys the coproduct Leibniz rule",
                residual=res, exact_zero=res.is_zero))
    return reports


def _labelled_generators(gens: GeneratorSet):
    out = []
    for i, op in enumerate(gens.creators, start=1):
        out.append((f"Adag_{i}", op))
    for i, op in enumerate(gens.annihilators, start=1):
        out.append((f"A^{i}", op))
    return out


def check_covariance(gens: GeneratorSet,
                     data: HopfAlgebraData) -> list[RelationReport]:
    """Transformation law of the generators under the adjoint action.

    Creators must satisfy x |> Adag_i = rho(x)^j_i Adag_j and
    annihilators x |> A^i = rho(S x)^i_j A^j.  The undeformed generators
    are expected to fail this for generic q (negative control).
    """
    if gens.modes != 2:
        raise ValueError("covariance checking is built for two modes")
    reports = []
    for x in GENERATOR_NAMES:
        rho_x = data.rho[x]
        for i in (1, 2):
            res = act(x, gens.creators[i - 1], data)
            for j in (1, 2):
                coeff = rho_x[j - 1][i - 1]
                if not coeff.is_zero:
                    res = res - gens.creators[j - 1].scale(coeff)
            reports.append(RelationReport(
                family="covariance-creator", indices=(x, i),
                relation=f"{x} |> Adag_{i} = rho({x})^j_{i} Adag_j",
                residual=res, exact_zero=res.is_zero))
        sign, s_word = data.antipode_word((x,))
        rho_sx = data.rho_word(s_word)
        for i in (1, 2):
            res = act(x, gens.annihilators[i - 1], data)
            for j in (1, 2):
                coeff = rho_sx[i - 1][j - 1]
                if not coeff.is_zero:
                    term = gens.annihilators[j - 1].scale(coeff)
                    res = res - (term if sign > 0 else -term)
            reports.append(RelationReport(
                family="covariance-annihilator", indices=(x, i),
                relation=f"{x} |> A^{i} = rho(S {x})^{i}_j A^j",
                residual=res, exact_zero=res.is_zero))
    return reports


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

@dataclass
class InvariantElement:
    expression: FockOperator
    degree: int
    label: str


def invariant_number(gens: GeneratorSet, label: str) -> InvariantElement:
    """The quadratic invariant: sum over modes of Adag_i A^i."""
    total = fock.zero(gens.modes)
    for c, a in zip(gens.creators, gens.annihilators):
        total = total + c * a
    return InvariantElement(total, degree=2, label=label)


def invariant_from_tensor(coeffs: dict, gens: GeneratorSet, kind: str,
                          label: str = "user") -> InvariantElement:
    """Candidate invariant from a user-supplied coefficient array.

    ``coeffs`` maps index tuples to scalars; each tuple selects a product
    of creators (kind "creators") or annihilators (kind "annihilators")
    in the given order.  The element is only assembled here; whether it
    is invariant is decided by :func:`invariance_check`.
    """
    if kind not in ("creators", "annihilators"):
        raise ValueError("kind must be 'creators' or 'annihilators'")
    source = gens.creators if kind == "creators" else gens.annihilators
    total = fock.zero(gens.modes)
    degree = 0
    for idx, coeff in coeffs.items():
        degree = max(degree, len(idx))
        op = fock.identity(gens.modes)
        for i in idx:
            op = op * source[i - 1]
        total = total + op.scale(coeff)
    return InvariantElement(total, degree=degree, label=label)


def invariance_check(element: InvariantElement, data: HopfAlgebraData,
                     mode: str, js: dict | None = None) -> list[RelationReport]:
    """Residuals x |> I - eps(x) I for every generator of the action.

    ``mode`` selects the deformed adjoint action or the classical
    commutator action (for which eps vanishes on the generators).
    """
    expr = element.expression
    reports = []
    if mode == "deformed":
        for x in ("E", "F", "K", "Kinv"):
            res = act(x, expr, data) - expr.scale(data.counit[x])
            reports.append(RelationReport(
                family="invariance-deformed", indices=(element.label, x),
                relation=f"{x} |> {element.label} = eps({x}) {element.label}",
                residual=res, exact_zero=res.is_zero))
    elif mode == "classical":
        js = js or classical_js()
        for x in ("j+", "j-", "j0"):
            res = classical_act(x, expr, js)
            reports.append(RelationReport(
                family="invariance-classical", indices=(element.label, x),
                relation=f"[{x}, {element.label}] = 0",
                residual=res, exact_zero=res.is_zero))
    else:
        raise ValueError("mode must be 'classical' or 'deformed'")
    return reports


def verify_I1_identity(gens: GeneratorSet,
                       q_point=None) -> RelationReport:
    """Closed form of the deformed quadratic invariant.

    On every joint occupation eigenstate with total occupation m, the
    deformed invariant sum Adag_i A^i must equal the deformed integer
    (m)_{q^-2} = (q^-2m - 1)/(q^-2 - 1); both sides are assembled as
    diagonal matrices and subtracted.
    """
    if gens.modes > 3:
        raise ValueError("identity check supports at most 3 modes")
    lhs = invariant_number(gens, "I1_q").expression
    base = Q ** -2
    dim = 1 << gens.modes
    rows = []
    for state in range(dim):
        m = bin(state).count("1")
        value = q_number(m, base)
        rows.append({state: value} if not value.is_zero else {})
    rhs = FockOperator(gens.modes, rows)
    res = lhs - rhs
    numeric = res.max_abs(q_point) if q_point is not None else None
    return RelationReport(
        family="invariant-identity", indices=("I1_q",),
        relation="sum_i Adag_i A^i = (q^-2m - 1)/(q^-2 - 1) on each "
                 "occupation-m eigenspace",
        residual=res, exact_zero=res.is_zero,
        numeric_max_abs=numeric)


def degree_two_invariant_basis(n_modes: int = 2):
    """Labelled degree <= 2 invariant elements of both kinds.

    Returns (classical list, deformed list) built over the undeformed and
    the dressed generators respectively: the unit, the quadratic number
    invariant, and the antisymmetric pair creator/annihilator bilinears.
    """
    plain = undeformed_set(n_modes)
    dressed = build_deforming_map(n_modes)

    def basis(gens: GeneratorSet, tag: str):
        eps = {(1, 2): ONE, (2, 1): -ONE}
        return [
            InvariantElement(fock.identity(n_modes), 0, f"1{tag}"),
            invariant_number(gens, f"I1{tag}"),
            invariant_from_tensor(eps, gens, "creators", f"pair-creator{tag}"),
            invariant_from_tensor(eps, gens, "annihilators",
                                  f"pair-annihilator{tag}"),
        ]

    return basis(plain, ""), basis(dressed, "_q")
