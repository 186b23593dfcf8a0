"""
Verification service.
Evaluates both sides of every identity on seeded samples and on exhaustive
sweeps, producing one VerificationReport per check.
"""

import cmath
import logging
import math
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Tuple

import attr

import config
from functions.errors import DomainError, GuardRejection, IsekiError
from functions.exact_core import (
    ExactPhase,
    bernoulli_b1,
    bernoulli_b2,
    dedekind_sum,
    eta_character_dedekind,
    eta_character_intro_form,
    eta_character_rademacher,
    gcd,
    render_fraction,
    sawtooth,
    theta1_multiplier,
)
from functions.modular_group import (
    ModularMatrix,
    UpperHalfPoint,
    automorphy_denominator,
    complete_bottom_row,
    decompose,
    frame_image,
    frame_tau,
    mobius_apply,
    sweep_matrices,
    v_of,
)
from functions.q_series import (
    PI_I,
    TWO_PI_I,
    LambdaParams,
    SeriesConfig,
    TermLedger,
    eta,
    eta_translate,
    fourier_F_partial,
    g0,
    lambda_fourier,
    lambda_series,
    partial_fraction_closed,
    partial_fraction_sum,
    principal_sqrt_factor,
    theta1_eta_form,
    theta1_product,
    theta1_series,
    theta1_sum_product,
    theta1_translate,
)
from services import sampling
from services.sampling import SampleSpec

logger = logging.getLogger(__name__)

PASSED = "passed"
FAILED = "failed"
SKIPPED = "skipped"

# verify families in run order; "all" expands to these
FAMILIES = (
    "iseki",
    "lambda-fourier",
    "theta1",
    "eq17",
    "frame",
    "eta",
    "oracle",
    "zeros",
    "translate",
    "eta-factor",
    "quasiperiod",
    "eq29",
    "characters",
    "reciprocity",
    "fourier",
    "sawtooth",
)


def render_value(value) -> str:
    """Inputs and sides as text: complex as RE,IM, rationals as num/den"""
    if isinstance(value, UpperHalfPoint):
        value = value.tau
    if isinstance(value, complex):
        return f"{value.real!r},{value.imag!r}"
    if isinstance(value, Fraction):
        return render_fraction(value)
    if isinstance(value, (ExactPhase, ModularMatrix)):
        return value.render()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _finite_nonnegative(instance, attribute, value):
    if not (math.isfinite(value) and value >= 0.0):
        raise DomainError(f"{attribute.name} must be finite and nonnegative, got {value}")


def _consistent(instance, attribute, value):
    if instance.status != SKIPPED and value != (instance.residual <= instance.tolerance):
        raise DomainError(f"passed={value} disagrees with residual {instance.residual} <= {instance.tolerance}")


@attr.s(frozen=True, slots=True)
class VerificationReport:
    """Outcome of one identity check"""

    check_id: str = attr.ib()
    index: int = attr.ib()
    inputs: Dict[str, str] = attr.ib(factory=dict)
    lhs: str = attr.ib(default="")
    rhs: str = attr.ib(default="")
    residual: float = attr.ib(default=0.0, converter=float, validator=_finite_nonnegative)
    tolerance: float = attr.ib(default=0.0, converter=float, validator=_finite_nonnegative)
    status: str = attr.ib(default=PASSED, validator=attr.validators.in_((PASSED, FAILED, SKIPPED)))
    passed: bool = attr.ib(default=True, validator=_consistent)
    terms_used: int = attr.ib(default=0)
    message: str = attr.ib(default="")

    @property
    def key(self) -> Tuple[str, int]:
        return self.check_id, self.index


@attr.s(frozen=True, slots=True)
class SuiteResult:
    reports: List[VerificationReport] = attr.ib(factory=list)
    summary: Dict[str, Dict[str, int]] = attr.ib(factory=dict)

    @property
    def failures(self) -> int:
        return sum(counts[FAILED] for counts in self.summary.values())

    @property
    def ok(self) -> bool:
        return self.failures == 0


def summarize(reports: Iterable[VerificationReport]) -> Dict[str, Dict[str, int]]:
    """Per check_id counts of passed / failed / skipped"""
    summary: Dict[str, Dict[str, int]] = {}
    for report in reports:
        counts = summary.setdefault(report.check_id, {PASSED: 0, FAILED: 0, SKIPPED: 0})
        counts[report.status] += 1
    return summary


@attr.s(frozen=True, slots=True)
class Outcome:
    """What a check computed, before it is judged against its tolerance"""

    lhs = attr.ib()
    rhs = attr.ib()
    residual: float = attr.ib()
    terms: int = attr.ib(default=0)
    message: str = attr.ib(default="")


def _failure_residual(tolerance: float) -> float:
    return max(1.0, 2.0 * tolerance)


def _relative(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / (1.0 + abs(lhs))


def _exact_outcome(lhs, rhs, failures: List[str], terms: int = 0) -> Outcome:
    # exact checks: residual 0 when every sub-check holds, 1 otherwise
    if failures:
        return Outcome(lhs, rhs, 1.0, terms, "failed: " + "; ".join(failures))
    return Outcome(lhs, rhs, 0.0, terms)


class VerificationService:
    """Runs identity checks against one SeriesConfig"""

    def __init__(self, cfg: SeriesConfig = None, tolerances: Dict[str, float] = None):
        self.cfg = cfg or SeriesConfig.from_env()
        self.tolerances = dict(config.TOLERANCES)
        self.tolerances.update(tolerances or {})

    def _run(self, check_id: str, index: int, inputs: Dict[str, object], tolerance: float,
             compute: Callable[[], Outcome]) -> VerificationReport:
        """Evaluate one check; guard rejections become skips, other kernel errors failures"""
        rendered = {name: render_value(value) for name, value in inputs.items()}
        try:
            outcome = compute()
        except GuardRejection as e:
            logger.info("%s[%d] skipped: %s", check_id, index, e)
            return VerificationReport(check_id, index, rendered, tolerance=tolerance,
                                      status=SKIPPED, passed=True, message=str(e))
        except IsekiError as e:
            logger.warning("%s[%d] failed with %s: %s", check_id, index, type(e).__name__, e)
            return VerificationReport(check_id, index, rendered, residual=_failure_residual(tolerance),
                                      tolerance=tolerance, status=FAILED, passed=False,
                                      terms_used=getattr(e, "terms", 0), message=str(e))

        residual, message = outcome.residual, outcome.message
        if not math.isfinite(residual):
            residual, message = _failure_residual(tolerance), f"non-finite residual {outcome.residual}"
        passed = residual <= tolerance
        if not passed:
            logger.warning("%s[%d] failed: residual %.3g > %.3g at %s", check_id, index, residual, tolerance, rendered)
        return VerificationReport(
            check_id,
            index,
            rendered,
            lhs=render_value(outcome.lhs),
            rhs=render_value(outcome.rhs),
            residual=residual,
            tolerance=tolerance,
            status=PASSED if passed else FAILED,
            passed=passed,
            terms_used=outcome.terms,
            message=message,
        )

    # -- Iseki identity -------------------------------------------------------

    def check_iseki(self, p: LambdaParams, index: int = 0, continued: bool = False) -> VerificationReport:
        """
        Lambda(alpha, beta, w, theta) - Lambda(1-beta, alpha, 1/w, -i theta/w) = g0,
        relative to 1 + |Lambda|. continued=True allows complex theta and
        reports under iseki-complex.
        """
        check_id = "iseki-complex" if continued else "iseki"
        inputs = {"alpha": p.alpha, "beta": p.beta, "theta": p.theta, "w": p.w}

        def compute() -> Outcome:
            if continued:
                if not 0.0 < p.alpha < 1.0 or not 0.0 < (p.beta + p.theta).real < 1.0:
                    raise DomainError(f"Continued check needs 0 < alpha < 1 and 0 < Re(beta + theta) < 1, got {p}")
            else:
                p.check_hypotheses()
            spread = max(abs(p.w), 1.0 / abs(p.w))
            if spread > config.ISEKI_MAX_W_SPREAD:
                raise GuardRejection(f"max(|w|, 1/|w|) = {spread:.6g} exceeds {config.ISEKI_MAX_W_SPREAD}")
            ledger = TermLedger()
            value = lambda_series(p, self.cfg, ledger)
            swapped = lambda_series(p.swap(), self.cfg, ledger)
            correction = g0(p)
            return Outcome(value - swapped, correction, abs(value - swapped - correction) / (1.0 + abs(value)),
                           ledger.terms)

        return self._run(check_id, index, inputs, self.tolerances[check_id], compute)

    def check_lambda_fourier(self, p: LambdaParams, index: int = 0) -> VerificationReport:
        """Double log series against the single Fourier sum"""
        inputs = {"alpha": p.alpha, "beta": p.beta, "theta": p.theta, "w": p.w}

        def compute() -> Outcome:
            ledger = TermLedger()
            lhs = lambda_series(p, self.cfg, ledger)
            rhs = lambda_fourier(p, self.cfg, ledger)
            return Outcome(lhs, rhs, _relative(lhs, rhs), ledger.terms)

        return self._run("lambda-fourier", index, inputs, self.tolerances["lambda-fourier"], compute)

    # -- theta1 and eta transformation laws ---------------------------------------

    @staticmethod
    def _require_c_positive(A: ModularMatrix) -> None:
        if not A.is_normalized or A.c <= 0:
            raise DomainError(f"Check needs a normalized matrix with c > 0, got {A}")

    def check_theta1_transform(self, A: ModularMatrix, z: complex, tau: UpperHalfPoint,
                               index: int = 0) -> VerificationReport:
        """theta1(z/(c tau+d), A tau) = eps1(A) (-i(c tau+d))^{1/2} e^{pi i c z^2/(c tau+d)} theta1(z, tau)"""
        inputs = {"A": A, "z": z, "tau": tau}

        def compute() -> Outcome:
            self._require_c_positive(A)
            ledger = TermLedger()
            base = theta1_product(z, tau, self.cfg, ledger)
            if abs(base) <= config.THETA_ZERO_GUARD:
                raise GuardRejection(f"|theta1(z, tau)| = {abs(base):.3g} is within the zero guard")
            den = automorphy_denominator(A, tau)
            lhs = theta1_product(z / den, mobius_apply(A, tau), self.cfg, ledger)
            factor = theta1_multiplier(A).to_complex() * principal_sqrt_factor(A, tau) \
                * cmath.exp(PI_I * A.c * z * z / den)
            rhs = factor * base
            return Outcome(lhs, rhs, _relative(lhs, rhs), ledger.terms)

        return self._run("theta1", index, inputs, self.tolerances["theta1"], compute)

    def check_eq17(self, A: ModularMatrix, z: complex, tau: UpperHalfPoint, index: int = 0) -> VerificationReport:
        """
        Exponentiated log-level law for the z-product in the (v, H, h, k) variables:
        P(z/(c tau+d), A tau) = P(z, tau) exp(2 pi i s(h,k) - (pi/6k)(v - 1/v) - pi i/2
                                           + pi k z^2/v + pi i z - pi z/v)
        """
        inputs = {"A": A, "z": z, "tau": tau}

        def compute() -> Outcome:
            self._require_c_positive(A)
            frame = decompose(A)
            v = v_of(A, tau)
            k = frame.k
            ledger = TermLedger()
            lhs = theta1_sum_product(z / automorphy_denominator(A, tau), mobius_apply(A, tau), self.cfg, ledger)
            base = theta1_sum_product(z, tau, self.cfg, ledger)
            exponent = TWO_PI_I * float(dedekind_sum(frame.h, k)) - (math.pi / (6 * k)) * (v - 1.0 / v) \
                - PI_I / 2.0 + math.pi * k * z * z / v + PI_I * z - math.pi * z / v
            rhs = base * cmath.exp(exponent)
            return Outcome(lhs, rhs, _relative(lhs, rhs), ledger.terms)

        return self._run("eq17", index, inputs, self.tolerances["eq17"], compute)

    def check_frame(self, A: ModularMatrix, tau: UpperHalfPoint, index: int = 0) -> VerificationReport:
        """tau = (iv+h)/k, A tau = (H+i/v)/k and the (pi i/6)(tau - A tau) split"""
        inputs = {"A": A, "tau": tau}

        def compute() -> Outcome:
            self._require_c_positive(A)
            frame = decompose(A)
            v = v_of(A, tau)
            t = tau.tau
            image = mobius_apply(A, tau).tau
            lhs = PI_I / 6.0 * (t - image)
            rhs = -TWO_PI_I * (A.a + A.d) / (12.0 * A.c) - (math.pi / (6 * frame.k)) * (v - 1.0 / v)
            residual = max(
                _relative(frame_tau(frame, v), t),
                _relative(frame_image(frame, v), image),
                _relative(lhs, rhs),
            )
            return Outcome(lhs, rhs, residual)

        return self._run("frame", index, inputs, self.tolerances["frame"], compute)

    def check_eta_transform(self, A: ModularMatrix, tau: UpperHalfPoint, index: int = 0) -> VerificationReport:
        """eta(A tau) = eps(A) (-i(c tau+d))^{1/2} eta(tau); c = 0 goes through the translation law"""
        inputs = {"A": A, "tau": tau}

        def compute() -> Outcome:
            if not A.is_normalized:
                raise DomainError(f"Check needs a normalized matrix, got {A}")
            ledger = TermLedger()
            if A.c == 0:
                lhs = eta(mobius_apply(A, tau), self.cfg, ledger)
                rhs = eta_translate(tau, A.b, self.cfg, ledger)
            else:
                lhs = eta(mobius_apply(A, tau), self.cfg, ledger)
                factor = eta_character_dedekind(A).to_complex() * principal_sqrt_factor(A, tau)
                rhs = factor * eta(tau, self.cfg, ledger)
            return Outcome(lhs, rhs, _relative(lhs, rhs), ledger.terms)

        return self._run("eta", index, inputs, self.tolerances["eta"], compute)

    # -- q-series invariants ---------------------------------------------

    def check_theta1_oracle(self, z: complex, tau: UpperHalfPoint, index: int = 0) -> VerificationReport:
        """Product expansion against the classical series"""
        inputs = {"z": z, "tau": tau}

        def compute() -> Outcome:
            ledger = TermLedger()
            lhs = theta1_product(z, tau, self.cfg, ledger)
            rhs = theta1_series(z, tau, self.cfg, ledger)
            return Outcome(lhs, rhs, _relative(lhs, rhs), ledger.terms)

        return self._run("oracle", index, inputs, self.tolerances["oracle"], compute)

    def check_theta1_zeros(self, m: int, n: int, tau: UpperHalfPoint, index: int = 0) -> VerificationReport:
        """theta1 vanishes at m + n tau"""
        inputs = {"m": m, "n": n, "tau": tau}

        def compute() -> Outcome:
            ledger = TermLedger()
            value = theta1_product(m + n * tau.tau, tau, self.cfg, ledger)
            return Outcome(value, 0j, abs(value), ledger.terms)

        return self._run("zeros", index, inputs, self.tolerances["zeros"], compute)

    def check_translate(self, z: complex, tau: UpperHalfPoint, b: int, index: int = 0) -> VerificationReport:
        """theta1(z, tau+b) = e^{pi i b/4} theta1(z, tau) and eta(tau+b) = e^{pi i b/12} eta(tau)"""
        inputs = {"z": z, "tau": tau, "b": b}

        def compute() -> Outcome:
            ledger = TermLedger()
            shifted = UpperHalfPoint(tau.tau + b)
            theta_lhs = theta1_product(z, shifted, self.cfg, ledger)
            theta_rhs = theta1_translate(z, tau, b, self.cfg, ledger)
            eta_lhs = eta(shifted, self.cfg, ledger)
            eta_rhs = eta_translate(tau, b, self.cfg, ledger)
            residual = max(_relative(theta_lhs, theta_rhs), _relative(eta_lhs, eta_rhs))
            return Outcome(theta_lhs, theta_rhs, residual, ledger.terms)

        return self._run("translate", index, inputs, self.tolerances["translate"], compute)

    def check_eta_factor(self, z: complex, tau: UpperHalfPoint, index: int = 0) -> VerificationReport:
        """theta1 through eta against the plain product"""
        inputs = {"z": z, "tau": tau}

        def compute() -> Outcome:
            ledger = TermLedger()
            lhs = theta1_eta_form(z, tau, self.cfg, ledger)
            rhs = theta1_product(z, tau, self.cfg, ledger)
            return Outcome(lhs, rhs, _relative(lhs, rhs), ledger.terms)

        return self._run("eta-factor", index, inputs, self.tolerances["eta-factor"], compute)

    def _quasiperiod_sides(self, u: complex, tau: UpperHalfPoint, m: int, ledger: TermLedger,
                           base: complex = None) -> Tuple[complex, complex]:
        t = tau.tau
        growth = math.pi * (2.0 * m * u.imag + m * m * t.imag)
        if growth > config.OVERFLOW_LOG_LIMIT:
            raise GuardRejection(f"quasi-period factor e^{growth:.0f} overflows")
        if base is None:
            base = theta1_product(u, tau, self.cfg, ledger)
        lhs = theta1_product(u + m * t, tau, self.cfg, ledger)
        rhs = (-1) ** m * cmath.exp(-PI_I * (2 * m * u + m * m * t)) * base
        return lhs, rhs

    def check_quasiperiod(self, u: complex, tau: UpperHalfPoint, m: int, index: int = 0) -> VerificationReport:
        """theta1(u + m tau, tau) = (-1)^m e^{-pi i(2mu + m^2 tau)} theta1(u, tau)"""
        inputs = {"u": complex(u), "tau": tau, "m": m}

        def compute() -> Outcome:
            if abs(m) > config.QUASIPERIOD_M_MAX:
                raise DomainError(f"Quasi-period check needs |m| <= {config.QUASIPERIOD_M_MAX}, got {m}")
            ledger = TermLedger()
            lhs, rhs = self._quasiperiod_sides(complex(u), tau, m, ledger)
            return Outcome(lhs, rhs, _relative(lhs, rhs), ledger.terms)

        return self._run("quasiperiod", index, inputs, self.tolerances["quasiperiod"], compute)

    def check_eq29(self, c: int, tau: UpperHalfPoint, index: int = 0) -> VerificationReport:
        """
        theta1(1/c, tau) = e^{4 pi i c^2 tau} theta1(2c tau + 1/c, tau), checked
        directly and again as the m = 2c, u = 1/c quasi-period instance.
        """
        inputs = {"c": c, "tau": tau}

        def compute() -> Outcome:
            if not 1 <= c <= config.EQ29_C_MAX:
                raise DomainError(f"Check needs 1 <= c <= {config.EQ29_C_MAX}, got {c}")
            t = tau.tau
            growth = 4.0 * math.pi * c * c * t.imag
            if growth > config.OVERFLOW_LOG_LIMIT:
                raise GuardRejection(f"e^{{4 pi i c^2 tau}} needs e^{growth:.0f}")
            ledger = TermLedger()
            u = 1.0 / c
            lhs = theta1_product(u, tau, self.cfg, ledger)
            shifted = theta1_product(2 * c * t + u, tau, self.cfg, ledger)
            rhs = cmath.exp(4.0 * PI_I * c * c * t) * shifted
            direct = _relative(lhs, rhs)

            # (-1)^m e^{-2 pi i m u} must be exactly 1 for m = 2c, u = 1/c
            m = 2 * c
            phase = ExactPhase(Fraction(m) - 2 * m * Fraction(1, c))
            if not phase.is_one:
                return Outcome(lhs, rhs, 1.0, ledger.terms, f"quasi-period phase is {phase.render()}, not 1")
            quasi_lhs, quasi_rhs = self._quasiperiod_sides(complex(u), tau, m, ledger, base=lhs)
            return Outcome(lhs, rhs, max(direct, _relative(quasi_lhs, quasi_rhs)), ledger.terms)

        return self._run("eq29", index, inputs, self.tolerances["eq29"], compute)

    # -- Fourier building blocks -----------------------------------------

    def partial_fraction_tolerance(self, M: int) -> float:
        return self.tolerances["partial-fraction"] * config.FOURIER_M / M

    def check_partial_fraction(self, m: int, alpha: float, w: complex, M: int, index: int = 0) -> VerificationReport:
        """e^{2 pi m alpha w}/(1 - e^{2 pi m w}) + 1/(2 pi w m) against the symmetric partial sum"""
        inputs = {"m": m, "alpha": float(alpha), "w": complex(w), "M": M}

        def compute() -> Outcome:
            if m == 0 or not 0.0 < alpha < 1.0 or not complex(w).real > 0.0:
                raise DomainError(f"Partial fraction check needs m != 0, 0 < alpha < 1, Re w > 0; got {inputs}")
            closed = partial_fraction_closed(m, alpha, complex(w))
            partial = partial_fraction_sum(m, alpha, complex(w), M)
            return Outcome(closed, partial, abs(closed - partial), 2 * M)

        return self._run("partial-fraction", index, inputs, self.partial_fraction_tolerance(M), compute)

    @staticmethod
    def F_closed(n: int, x) -> complex:
        """F1(x) = -2 pi i B1(x), F2(x) = 2 pi^2 B2(x)"""
        if n == 1:
            return -TWO_PI_I * float(bernoulli_b1(x))
        return complex(2.0 * math.pi ** 2 * float(bernoulli_b2(x)), 0.0)

    @staticmethod
    def F_tolerance(n: int, x: float, M: int) -> float:
        if n == 2:
            return 2.5 / M
        return 10.0 / (M * math.sin(math.pi * x))

    def check_F_identity(self, n: int, x: float, M: int, index: int = 0) -> VerificationReport:
        check_id = f"fourier-F{n}"
        inputs = {"x": float(x), "M": M}
        tolerance = self.F_tolerance(n, x, M) if 0.0 < x < 1.0 and M >= 1 else 0.0

        def compute() -> Outcome:
            partial = fourier_F_partial(n, x, M)
            closed = self.F_closed(n, x)
            return Outcome(partial, closed, abs(partial - closed), M)

        return self._run(check_id, index, inputs, tolerance, compute)

    def check_F_identities(self, x: float, M: int, index: int = 0) -> List[VerificationReport]:
        """F1 and F2 partial sums against their Bernoulli closed forms"""
        return [self.check_F_identity(n, x, M, index) for n in (1, 2)]

    def check_fourier_slope(self, kind: str, M: int, index: int = 0) -> VerificationReport:
        """
        Doubling M roughly halves the residual of a conditionally convergent
        sum. kind is "partial-fraction" (alpha = 1/4, m = -1, w = 1) or "F1"
        (x = 1/4); M must be a multiple of 4.
        """
        inputs = {"kind": kind, "M": M}

        def residual_at(size: int) -> float:
            if kind == "partial-fraction":
                return abs(partial_fraction_closed(-1, 0.25, 1 + 0j) - partial_fraction_sum(-1, 0.25, 1 + 0j, size))
            if kind == "F1":
                return abs(fourier_F_partial(1, 0.25, size) - self.F_closed(1, 0.25))
            raise DomainError(f"Unknown slope check {kind!r}")

        def compute() -> Outcome:
            if M < 4 or M % 4:
                raise DomainError(f"Slope check needs M a positive multiple of 4, got {M}")
            single, double = residual_at(M), residual_at(2 * M)
            if single == 0.0:
                raise DomainError(f"{kind} residual vanished at M = {M}; no slope to measure")
            ratio = double / single
            return Outcome(single, double, abs(ratio - 0.5), 3 * M, f"ratio {ratio!r}")

        return self._run("fourier-slope", index, inputs, self.tolerances["fourier-slope"], compute)

    # -- exact checks ----------------------------------------------------

    def check_character_consistency(self, c: int, d: int, index: int = 0) -> VerificationReport:
        """Dedekind-sum and case-formula eta characters agree exactly, with their side conditions"""
        inputs = {"c": c, "d": d}

        def compute() -> Outcome:
            A = complete_bottom_row(c, d)
            dedekind = eta_character_dedekind(A)
            case_form = eta_character_rademacher(A)
            failures = []
            if dedekind != case_form:
                failures.append(f"Dedekind form {dedekind.render()} != case formula {case_form.render()} at {A.render()}")
            if eta_character_intro_form(A) != dedekind:
                failures.append("s(d, c) form disagrees")
            if not (dedekind ** 24).is_one:
                failures.append("eps^24 != 1")
            if not (theta1_multiplier(A) ** 8).is_one:
                failures.append("eps1^8 != 1")
            if dedekind_sum(-d, c) != -dedekind_sum(d, c):
                failures.append("s(-d, c) != -s(d, c)")
            # T A keeps (c, d) and shifts b; eps picks up e^{pi i/12}
            shifted = ModularMatrix(A.a + c, A.b + d, c, d)
            if eta_character_dedekind(shifted) != dedekind * ExactPhase(Fraction(1, 12)):
                failures.append(f"eps(TA) != e^(pi i/12) eps(A) at {shifted.render()}")
            if eta_character_rademacher(shifted) != eta_character_dedekind(shifted):
                failures.append(f"forms disagree at {shifted.render()}")
            return _exact_outcome(dedekind, case_form, failures)

        return self._run("characters", index, inputs, self.tolerances["characters"], compute)

    def check_sawtooth_sums(self, k: int, h: int, index: int = 0) -> VerificationReport:
        inputs = {"k": k, "h": h}

        def compute() -> Outcome:
            if k < 1 or gcd(h, k) != 1:
                raise DomainError(f"Sawtooth check needs k >= 1 and gcd(h, k) = 1, got h={h}, k={k}")
            mus = range(1, k)
            phi = [(h * mu) % k for mu in mus]
            failures = []
            if sum(Fraction(mu, k) - Fraction(1, 2) for mu in mus) != 0:
                failures.append("sum of mu/k - 1/2 is not 0")
            if sorted(phi) != list(mus):
                failures.append(f"h*mu mod k is not a permutation: {phi}")
            if sum(Fraction(p, k) - Fraction(1, 2) for p in phi) != 0:
                failures.append("sum of phi/k - 1/2 is not 0")
            fourier_form = sum((Fraction(mu, k) * sawtooth(Fraction(h * mu, k)) for mu in mus), Fraction(0))
            expected = dedekind_sum(h, k)
            if fourier_form != expected:
                failures.append(f"sum (mu/k)((h mu/k)) = {render_fraction(fourier_form)} != s(h,k)")
            return _exact_outcome(fourier_form, expected, failures, terms=len(mus))

        return self._run("sawtooth", index, inputs, self.tolerances["sawtooth"], compute)

    @staticmethod
    def _reciprocity_failure(h: int, k: int):
        lhs = dedekind_sum(h, k) + dedekind_sum(k, h)
        rhs = Fraction(-1, 4) + (Fraction(h, k) + Fraction(k, h) + Fraction(1, h * k)) / 12
        return lhs, rhs, None if lhs == rhs else f"s({h},{k}) + s({k},{h}) = {render_fraction(lhs)}"

    def check_reciprocity(self, h: int, k: int, index: int = 0) -> VerificationReport:
        """s(h,k) + s(k,h) = -1/4 + (h/k + k/h + 1/(hk))/12"""
        inputs = {"h": h, "k": k}

        def compute() -> Outcome:
            if h <= 0 or k <= 0 or gcd(h, k) != 1:
                raise DomainError(f"Reciprocity needs coprime h, k > 0, got h={h}, k={k}")
            lhs, rhs, failure = self._reciprocity_failure(h, k)
            return _exact_outcome(lhs, rhs, [failure] if failure else [])

        return self._run("reciprocity", index, inputs, self.tolerances["reciprocity"], compute)

    def check_reciprocity_row(self, k: int, index: int = 0) -> VerificationReport:
        """Reciprocity for every coprime 0 < h < k, as one report"""
        inputs = {"k": k}

        def compute() -> Outcome:
            if k < 1:
                raise DomainError(f"Reciprocity row needs k >= 1, got {k}")
            failures, pairs = [], 0
            for h in range(1, k):
                if gcd(h, k) != 1:
                    continue
                pairs += 1
                failure = self._reciprocity_failure(h, k)[2]
                if failure:
                    failures.append(failure)
            return _exact_outcome(pairs, pairs - len(failures), failures, terms=pairs)

        return self._run("reciprocity", index, inputs, self.tolerances["reciprocity"], compute)

    # -- suite -----------------------------------------------------------

    def _family_iseki(self, spec: SampleSpec) -> Iterator[VerificationReport]:
        for i in range(spec.count):
            yield self.check_iseki(sampling.draw_lambda(spec, i), i)
        for i in range(spec.count):
            yield self.check_iseki(sampling.draw_lambda_complex(spec, i), i, continued=True)

    def _family_lambda_fourier(self, spec: SampleSpec) -> Iterator[VerificationReport]:
        for i in range(spec.count):
            yield self.check_lambda_fourier(sampling.draw_lambda(spec, i), i)

    def _matrix_samples(self, spec: SampleSpec) -> Iterator[Tuple[int, ModularMatrix, complex, UpperHalfPoint]]:
        # every family on the matrix sweep sees the same (z, tau) for a given index
        if spec.per_matrix == 0:
            return
        for i, A in enumerate(sweep_matrices(spec.c_max, spec.a_max)):
            for j in range(spec.per_matrix):
                z, tau = sampling.draw_point(spec, "matrix-sweep", i, j)
                yield i * spec.per_matrix + j, A, z, tau

    def _theta1_pairs(self, spec: SampleSpec) -> Iterator[Tuple[VerificationReport, VerificationReport]]:
        for index, A, z, tau in self._matrix_samples(spec):
            multiplicative = self.check_theta1_transform(A, z, tau, index)
            exponentiated = self.check_eq17(A, z, tau, index)
            if multiplicative.status == SKIPPED and exponentiated.status != SKIPPED:
                exponentiated = attr.evolve(exponentiated, status=SKIPPED, passed=True,
                                            message=multiplicative.message)
            elif exponentiated.status != SKIPPED and multiplicative.passed != exponentiated.passed:
                logger.warning("eq17[%d] disagrees with theta1[%d]", index, index)
                exponentiated = attr.evolve(
                    exponentiated,
                    residual=_failure_residual(exponentiated.tolerance),
                    status=FAILED,
                    passed=False,
                    message=f"disagrees with the theta1 check (residual {exponentiated.residual!r})",
                )
            yield multiplicative, exponentiated

    def _family_theta1(self, spec: SampleSpec) -> Iterator[VerificationReport]:
        for multiplicative, exponentiated in self._theta1_pairs(spec):
            yield multiplicative
            yield exponentiated

    def _family_eq17(self, spec: SampleSpec) -> Iterator[VerificationReport]:
        for _, exponentiated in self._theta1_pairs(spec):
            yield exponentiated

    def _family_frame(self, spec: SampleSpec) -> Iterator[VerificationReport]:
        for index, A, _, tau in self._matrix_samples(spec):
            yield self.check_frame(A, tau, index)

    def _family_eta(self, spec: SampleSpec) -> Iterator[VerificationReport]:
        for index, A, _, tau in self._matrix_samples(spec):
            yield self.check_eta_transform(A, tau, index)

    def _family_oracle(self, spec: SampleSpec) -> Iterator[VerificationReport]:
        for i in range(spec.count // 2):
            z, tau = sampling.draw_point(spec, "oracle", i, im_range=spec.oracle_im_tau, z_max=spec.oracle_z_max,
                                         re_range=spec.oracle_re_tau)
            yield self.check_theta1_oracle(z, tau, i)

    def _family_zeros(self, spec: SampleSpec) -> Iterator[VerificationReport]:
        lattice = [(m, n) for m in range(-2, 3) for n in (-1, 0, 1)]
        for i in range(spec.count // 20):
            tau = sampling.draw_tau(sampling.generator(spec, "zeros", i), spec, spec.quasi_im_tau)
            for j, (m, n) in enumerate(lattice):
                yield self.check_theta1_zeros(m, n, tau, i * len(lattice) + j)

    def _family_translate(self, spec: SampleSpec) -> Iterator[VerificationReport]:
        for i in range(spec.count // 2):
            z, tau = sampling.draw_point(spec, "translate", i)
            yield self.check_translate(z, tau, i % 7 - 3, i)

    def _family_eta_factor(self, spec: SampleSpec) -> Iterator[VerificationReport]:
        for i in range(spec.count // 2):
            z, tau = sampling.draw_point(spec, "eta-factor", i)
            yield self.check_eta_factor(z, tau, i)

    def _family_quasiperiod(self, spec: SampleSpec) -> Iterator[VerificationReport]:
        m_values = range(-spec.quasiperiod_m_max, spec.quasiperiod_m_max + 1)
        for i in range(spec.count // 20):
            u, tau = sampling.draw_point(spec, "quasiperiod", i, im_range=spec.quasi_im_tau)
            for j, m in enumerate(m_values):
                yield self.check_quasiperiod(u, tau, m, i * len(m_values) + j)

    def _family_eq29(self, spec: SampleSpec) -> Iterator[VerificationReport]:
        for i in range(spec.count // 20):
            tau = sampling.draw_tau(sampling.generator(spec, "eq29", i), spec, spec.eq29_im_tau)
            for c in range(1, spec.eq29_c_max + 1):
                yield self.check_eq29(c, tau, i * spec.eq29_c_max + c - 1)

    def _family_characters(self, spec: SampleSpec) -> Iterator[VerificationReport]:
        if spec.count == 0:
            return
        index = 0
        for c in range(1, spec.character_c_max + 1):
            for d in range(-c, c + 1):
                if gcd(c, d) == 1:
                    yield self.check_character_consistency(c, d, index)
                    index += 1

    def _family_reciprocity(self, spec: SampleSpec) -> Iterator[VerificationReport]:
        if spec.count == 0:
            return
        for k in range(2, spec.reciprocity_k_max + 1):
            yield self.check_reciprocity_row(k, k - 2)

    def _family_fourier(self, spec: SampleSpec) -> Iterator[VerificationReport]:
        M = spec.fourier_M
        for i in range(spec.count // 20):
            rng = sampling.generator(spec, "fourier", i)
            alpha = float(rng.uniform(*spec.alpha))
            m = int(rng.choice([-3, -2, -1, 1, 2, 3]))
            w = complex(float(rng.uniform(*spec.re_w)), float(rng.uniform(*spec.im_w)))
            x = float(rng.uniform(*spec.alpha))
            yield self.check_partial_fraction(m, alpha, w, M, i)
            yield from self.check_F_identities(x, M, i)
        if spec.count > 0:
            slope_M = M - M % 4 or 4
            yield self.check_fourier_slope("partial-fraction", slope_M, 0)
            yield self.check_fourier_slope("F1", slope_M, 1)

    def _family_sawtooth(self, spec: SampleSpec) -> Iterator[VerificationReport]:
        if spec.count == 0:
            return
        index = 0
        for k in range(1, spec.sawtooth_k_max + 1):
            for h in range(-k, k + 1):
                if gcd(h, k) == 1:
                    yield self.check_sawtooth_sums(k, h, index)
                    index += 1

    def family_runner(self, family: str) -> Callable[[SampleSpec], Iterator[VerificationReport]]:
        if family not in FAMILIES:
            raise DomainError(f"Unknown check family {family!r}; expected one of {', '.join(FAMILIES)} or all")
        return getattr(self, "_family_" + family.replace("-", "_"))

    def run_suite(self, spec: SampleSpec, families: Iterable[str] = ("all",)) -> SuiteResult:
        """
        Run the requested families. Reports come back ordered by
        (check_id, index) whatever order they were produced in.
        """
        names: List[str] = []
        for family in families:
            expanded = [f for f in FAMILIES if f != "eq17"] if family == "all" else [family]
            names.extend(f for f in expanded if f not in names)
        runners = [self.family_runner(name) for name in names]

        collected: Dict[Tuple[str, int], VerificationReport] = {}
        for name, runner in zip(names, runners):
            logger.info("Running %s (seed=%d, count=%d)", name, spec.seed, spec.count)
            for report in runner(spec):
                collected.setdefault(report.key, report)

        reports = [collected[key] for key in sorted(collected)]
        summary = summarize(reports)
        for check_id, counts in summary.items():
            logger.info("%s: %d passed, %d failed, %d skipped",
                        check_id, counts[PASSED], counts[FAILED], counts[SKIPPED])
        return SuiteResult(reports, summary)
