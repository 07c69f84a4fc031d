import math
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from duality_lab.algebra.element import star
from duality_lab.algebra.lie_algebra import HEISENBERG, SL2, StarName
from duality_lab.algebra.morphisms import AlgebraMorphism, antipode, apply_morphism, identity_morphism, \
    theta_charlier, theta_exp, theta_parabolic, theta_phi, theta_sqrt_c_from_c, transpose_sl2
from duality_lab.common.errors import UnknownTypeError
from duality_lab.common.logger import Logger
from duality_lab.common.scalars import parse_rational
from duality_lab.kernels.bessel import BesselKernel
from duality_lab.kernels.charlier import CharlierKernel
from duality_lab.kernels.duality_kernel import C_KEY, J_KEY, K_KEY, PHI_KEY, SCALE_KEY, DualityKernel, KernelFamily
from duality_lab.kernels.exponential import CORRECTED_SCALE, PRINTED_SCALE, ExpKernel
from duality_lab.kernels.hermite import HermiteKernel
from duality_lab.kernels.laguerre import LaguerreKernel
from duality_lab.kernels.meixner import MeixnerKernel
from duality_lab.kernels.meixner_pollaczek import MeixnerPollaczekKernel
from duality_lab.processes.process_spec import GeneratorVariant, ProcessFamily, ProcessSpec
from duality_lab.representations.heisenberg import RhoC, SigmaC
from duality_lab.representations.representation import Representation
from duality_lab.representations.su11 import PiK, RhoK, SigmaK
from duality_lab.verification.duality_case import DualityCase, EvaluationPlan
from duality_lab.verification.duality_residual import duality_residual
from duality_lab.verification.gram import gram_residual
from duality_lab.verification.intertwining import ElementMap, intertwining_residual, laguerre_eigen_residual, \
    meixner_eigen_residual
from duality_lab.verification_report import CheckKind, VerificationReport

logger = Logger("cases_catalog")

HALF = Fraction(1, 2)
DEFAULT_C = Fraction(3, 4)
DEFAULT_K = [HALF, Fraction(2)]
DEFAULT_PHI = math.pi / 3
LINE_INTERVAL = (-5.0, 5.0)
POSITIVE_INTERVAL = (0.1, 10.0)
FLOAT_POINTS = 25

SITES_KEY = "sites"
GRID_KEY = "grid"
MAXDEG_KEY = "maxdeg"
KERNEL_SCALE_KEY = "kernel-scale"

CaseBuilder = Callable[[bool, dict], DualityCase]


class CasesLoader:
    case_builders: Dict[str, CaseBuilder] = {}
    case_anchors: Dict[str, str] = {}

    @staticmethod
    def load_case(name: str, control: bool = False, overrides: Optional[dict] = None) -> DualityCase:
        if name not in CasesLoader.case_builders.keys():
            raise UnknownTypeError(f"Unknown case name given for cases loader [case: {name}]")
        case = CasesLoader.case_builders[name](control, dict(overrides or {}))
        return case.model_copy(update={"anchor": CasesLoader.case_anchors[name]})

    @staticmethod
    def register_case(name: str, builder: CaseBuilder, anchor: str):
        if not callable(builder):
            raise UnknownTypeError("Invalid builder given for cases loader")
        CasesLoader.case_builders[name] = builder
        CasesLoader.case_anchors[name] = anchor


def duality_case(name: str, control: bool = False, **overrides) -> DualityCase:
    return CasesLoader.load_case(name, control, overrides)


def duality_case_names() -> List[str]:
    return list(CasesLoader.case_builders.keys())


def _common(overrides: dict, grid: int) -> dict:
    common = {"grid": int(overrides.get(GRID_KEY, grid))}
    if KERNEL_SCALE_KEY in overrides:
        common["kernel_scale"] = overrides[KERNEL_SCALE_KEY]
    return common


def _control(control: bool, note: str) -> dict:
    if not control:
        return {"kind": CheckKind.Identity, "notes": []}
    return {"kind": CheckKind.NegativeControl, "notes": [note]}


def _irw_charlier(control: bool, overrides: dict) -> DualityCase:
    sites = overrides.get(SITES_KEY, 2)
    c = overrides.get(C_KEY, DEFAULT_C)
    left = ProcessSpec(family=ProcessFamily.IRW, sites=sites, c=c)
    # the walkers never see c, so the control changes the right process instead
    right = ProcessSpec(family=ProcessFamily.SIP, sites=sites, k=1) if control else left
    return DualityCase(name="irw-charlier", left=left, right=right, kernel=KernelFamily.Charlier,
                       kernel_params=[{C_KEY: left.c}] * sites, plan=EvaluationPlan.ExactDiscrete,
                       **_common(overrides, 10),
                       **_control(control, "IRW rates do not depend on c; control pairs the kernel with SIP(k=1)"))


def _irw_dif_hermite(control: bool, overrides: dict) -> DualityCase:
    sites = overrides.get(SITES_KEY, 2)
    c = parse_rational(overrides.get(C_KEY, DEFAULT_C))
    common = _common(overrides, 6)
    left = ProcessSpec(family=ProcessFamily.IRW, sites=sites, c=c)
    right = ProcessSpec(family=ProcessFamily.DIF, sites=sites, c=c, maxdeg=overrides.get(MAXDEG_KEY, common["grid"] + 2))
    kernel_c = 2 * c if control else c
    return DualityCase(name="irw-dif-hermite", left=left, right=right, kernel=KernelFamily.Hermite,
                       kernel_params=[{C_KEY: kernel_c}] * sites, plan=EvaluationPlan.ExactPolynomial,
                       **common,
                       **_control(control, f"Hermite kernel at c={kernel_c} against DIF at c={c}"))


def _dif_exp(control: bool, overrides: dict) -> DualityCase:
    sites = overrides.get(SITES_KEY, 2)
    c = overrides.get(C_KEY, DEFAULT_C)
    spec = ProcessSpec(family=ProcessFamily.DIF, sites=sites, c=c)
    scale = PRINTED_SCALE if control else CORRECTED_SCALE
    return DualityCase(name="dif-exp", left=spec, right=spec, kernel=KernelFamily.ExpKernel,
                       kernel_params=[{C_KEY: spec.c, SCALE_KEY: scale}] * sites, plan=EvaluationPlan.FloatAnalytic,
                       interval=LINE_INTERVAL,
                       **_common(overrides, FLOAT_POINTS),
                       **_control(control, "literal cross term -ixy/c, DIF needs -ixy/(2c)"))


def _sip_meixner(control: bool, overrides: dict) -> DualityCase:
    sites = overrides.get(SITES_KEY, 2)
    c = overrides.get(C_KEY, DEFAULT_C)
    spec = ProcessSpec(family=ProcessFamily.SIP, sites=sites, k=overrides.get(K_KEY, DEFAULT_K))
    shift = HALF if control else 0
    params = [{K_KEY: k + shift, C_KEY: c} for k in spec.k_values()]
    return DualityCase(name="sip-meixner", left=spec, right=spec, kernel=KernelFamily.Meixner,
                       kernel_params=params, plan=EvaluationPlan.ExactDiscrete,
                       **_common(overrides, 8),
                       **_control(control, "Meixner kernel at k + 1/2"))


def _sep_krawtchouk(control: bool, overrides: dict) -> DualityCase:
    sites = overrides.get(SITES_KEY, 2)
    c = overrides.get(C_KEY, DEFAULT_C)
    spec = ProcessSpec(family=ProcessFamily.SEP, sites=sites, j=overrides.get(J_KEY, [3, 2]))
    shift = 1 if control else 0
    params = [{J_KEY: j + shift, C_KEY: c} for j in spec.j]
    return DualityCase(name="sep-krawtchouk", left=spec, right=spec, kernel=KernelFamily.Krawtchouk,
                       kernel_params=params, plan=EvaluationPlan.ExactDiscrete,
                       **_common(overrides, max(spec.j)),
                       **_control(control, "Krawtchouk kernel at j + 1"))


def _sip_bep_laguerre(control: bool, overrides: dict) -> DualityCase:
    sites = overrides.get(SITES_KEY, 2)
    c = overrides.get(C_KEY, 1)
    common = _common(overrides, 6)
    k = overrides.get(K_KEY, DEFAULT_K)
    left = ProcessSpec(family=ProcessFamily.SIP, sites=sites, k=k)
    variant = GeneratorVariant.Printed if control else GeneratorVariant.Derived
    right = ProcessSpec(family=ProcessFamily.BEP, sites=sites, k=k, variant=variant,
                        maxdeg=overrides.get(MAXDEG_KEY, common["grid"] + 2))
    return DualityCase(name="sip-bep-laguerre", left=left, right=right, kernel=KernelFamily.Laguerre,
                       kernel_params=[{K_KEY: v, C_KEY: c} for v in left.k_values()],
                       plan=EvaluationPlan.ExactPolynomial,
                       **common, **_control(control, "literal BEP drift -2(k_i x_i - k_j x_j)"))


def _bep_bessel(control: bool, overrides: dict) -> DualityCase:
    sites = overrides.get(SITES_KEY, 2)
    spec = ProcessSpec(family=ProcessFamily.BEP, sites=sites, k=overrides.get(K_KEY, DEFAULT_K))
    shift = HALF if control else 0
    return DualityCase(name="bep-bessel", left=spec, right=spec, kernel=KernelFamily.Bessel,
                       kernel_params=[{K_KEY: k + shift} for k in spec.k_values()],
                       plan=EvaluationPlan.FloatAnalytic, interval=POSITIVE_INTERVAL,
                       **_common(overrides, FLOAT_POINTS),
                       **_control(control, "Bessel kernel at k + 1/2"))


def _sip_hyp_mp(control: bool, overrides: dict) -> DualityCase:
    sites = overrides.get(SITES_KEY, 2)
    phi = float(overrides.get(PHI_KEY, DEFAULT_PHI))
    common = _common(overrides, 5)
    k = overrides.get(K_KEY, DEFAULT_K)
    left = ProcessSpec(family=ProcessFamily.SIP, sites=sites, k=k)
    variant = GeneratorVariant.Printed if control else GeneratorVariant.Derived
    right = ProcessSpec(family=ProcessFamily.HYP, sites=sites, k=k, phi=phi, variant=variant,
                        maxdeg=overrides.get(MAXDEG_KEY, common["grid"] + 2))
    notes = ["the derived generator drops the constant shift k_i k_j of the literal form"]
    if control:
        notes.append("literal factor 2 in place of -1")
    return DualityCase(name="sip-hyp-mp", left=left, right=right, kernel=KernelFamily.MeixnerPollaczek,
                       kernel_params=[{K_KEY: v, PHI_KEY: phi} for v in left.k_values()],
                       plan=EvaluationPlan.FloatAnalytic,
                       kind=CheckKind.NegativeControl if control else CheckKind.Identity, notes=notes, **common)


class IntertwiningCase:
    """Representations, kernel and the generator maps on both slots of one intertwining relation"""

    def __init__(self, name: str, anchor: str, left: Representation, right: Representation,
                 kernel: DualityKernel, alpha: ElementMap, beta: ElementMap, maps: Tuple[str, str],
                 grid: int = 8, interval: Tuple[float, float] = POSITIVE_INTERVAL):
        self.__name = name
        self.__anchor = anchor
        self.__left = left
        self.__right = right
        self.__kernel = kernel
        self.__alpha = alpha
        self.__beta = beta
        self.__maps = maps
        self.__grid = grid
        self.__interval = interval

    @property
    def name(self) -> str:
        return self.__name

    @property
    def anchor(self) -> str:
        return self.__anchor

    def run(self) -> VerificationReport:
        notes = [f"alpha: {self.__maps[0]}, beta: {self.__maps[1]}"]
        return intertwining_residual(self.__left, self.__right, self.__kernel, self.__alpha, self.__beta,
                                     self.__grid, self.__interval, name=self.__name, notes=notes)


def _morphism(m: AlgebraMorphism) -> ElementMap:
    return lambda x: apply_morphism(m, x)


def _starred(star_name: StarName, after: Optional[AlgebraMorphism] = None) -> ElementMap:
    if after is None:
        return lambda x: star(x, star_name)
    return lambda x: apply_morphism(after, star(x, star_name))


def intertwining_cases(c=DEFAULT_C, k=Fraction(3, 4), meixner_c=Fraction(1, 4), phi: float = DEFAULT_PHI,
                       grid: int = 8) -> List[IntertwiningCase]:
    c, k, meixner_c = parse_rational(c), parse_rational(k), parse_rational(meixner_c)
    maxdeg = grid + 2
    exp_theta = theta_exp(CORRECTED_SCALE)
    return [
        IntertwiningCase("charlier", "Charlier polynomials as a Heisenberg intertwiner",
                         RhoC(c), RhoC(c), CharlierKernel(c),
                         _starred(StarName.Heisenberg), _morphism(theta_charlier()), ("star", "theta-charlier"), grid),
        IntertwiningCase("hermite", "Hermite polynomials between the sequence and differential Heisenberg actions",
                         RhoC(c), SigmaC(c, maxdeg), HermiteKernel(c),
                         _starred(StarName.Heisenberg), _morphism(identity_morphism(HEISENBERG)), ("star", "identity"),
                         grid),
        IntertwiningCase("exp", "exponential kernel for the differential Heisenberg action",
                         SigmaC(c), SigmaC(c), ExpKernel(c),
                         _starred(StarName.Heisenberg, exp_theta), _morphism(exp_theta), ("theta-exp after star", "theta-exp"),
                         FLOAT_POINTS, LINE_INTERVAL),
        IntertwiningCase("meixner", "Meixner polynomials for the discrete series",
                         PiK(k, meixner_c), PiK(k, meixner_c), MeixnerKernel(k, meixner_c),
                         _morphism(theta_sqrt_c_from_c(meixner_c)), _morphism(transpose_sl2()),
                         ("theta-sqrt-c", "transpose"), grid),
        IntertwiningCase("laguerre", "Laguerre polynomials between the discrete series and the Gamma action",
                         PiK(k), SigmaK(k, maxdeg), LaguerreKernel(k),
                         _morphism(theta_parabolic()), _morphism(antipode(SL2)), ("theta-parabolic", "antipode"), grid),
        IntertwiningCase("bessel", "Bessel functions for the Gamma action",
                         SigmaK(k), SigmaK(k), BesselKernel(k),
                         _morphism(identity_morphism(SL2)), _starred(StarName.Su11), ("identity", "su11 star"),
                         FLOAT_POINTS, POSITIVE_INTERVAL),
        IntertwiningCase("meixner-pollaczek", "Meixner-Pollaczek polynomials for the difference action",
                         PiK(k), RhoK(k, phi, maxdeg), MeixnerPollaczekKernel(k, phi),
                         _morphism(theta_phi(phi)), _morphism(antipode(SL2)), ("theta-phi", "antipode"), min(grid, 6)),
    ]


def intertwining_reports() -> List[VerificationReport]:
    """Seven intertwining relations plus the X_a eigen relations of the Meixner and Laguerre kernels"""
    reports = [case.run() for case in intertwining_cases()]
    reports.append(meixner_eigen_residual(Fraction(3, 4), Fraction(1, 4)))
    reports.append(laguerre_eigen_residual(Fraction(3, 4)))
    return reports


ORTHOGONALITY_FAMILIES: List[Tuple[KernelFamily, dict, int]] = [
    (KernelFamily.Charlier, {C_KEY: HALF}, 12),
    (KernelFamily.Meixner, {K_KEY: Fraction(3, 4), C_KEY: Fraction(1, 3)}, 12),
    (KernelFamily.Krawtchouk, {J_KEY: 6, C_KEY: Fraction(1, 3)}, 12),
    (KernelFamily.Hermite, {C_KEY: DEFAULT_C}, 10),
    (KernelFamily.Laguerre, {K_KEY: Fraction(3, 4)}, 10),
    (KernelFamily.MeixnerPollaczek, {K_KEY: Fraction(3, 4), PHI_KEY: DEFAULT_PHI}, 6),
]


def duality_reports(names: Optional[List[str]] = None, overrides: Optional[dict] = None,
                    controls: bool = True, workers: Optional[int] = None) -> List[VerificationReport]:
    """Each selected case followed by its negative control"""
    reports = []
    for name in names or duality_case_names():
        reports.append(duality_residual(CasesLoader.load_case(name, False, overrides), workers))
        if controls:
            reports.append(duality_residual(CasesLoader.load_case(name, True, overrides), workers))
    return reports


def orthogonality_reports(trunc: Optional[int] = None) -> List[VerificationReport]:
    return [gram_residual(family, params, trunc if trunc is not None else default_trunc)
            for family, params, default_trunc in ORTHOGONALITY_FAMILIES]


def list_cases() -> List[Dict[str, str]]:
    """Catalog of duality, intertwining and orthogonality checks in a fixed order"""
    catalog = [{"kind": "duality", "name": name, "anchor": CasesLoader.case_anchors[name]}
               for name in duality_case_names()]
    catalog += [{"kind": "intertwining", "name": case.name, "anchor": case.anchor}
                for case in intertwining_cases()]
    catalog += [{"kind": "orthogonality", "name": family.value, "anchor": "orthogonality of the kernel rows"}
                for family, _, _ in ORTHOGONALITY_FAMILIES]
    return catalog


CasesLoader.register_case("irw-charlier", _irw_charlier, "IRW self-duality, Charlier polynomials")
CasesLoader.register_case("irw-dif-hermite", _irw_dif_hermite, "IRW and DIF duality, Hermite polynomials")
CasesLoader.register_case("dif-exp", _dif_exp, "DIF self-duality, exponential kernel")
CasesLoader.register_case("sip-meixner", _sip_meixner, "SIP self-duality, Meixner polynomials")
CasesLoader.register_case("sep-krawtchouk", _sep_krawtchouk, "SEP self-duality, Krawtchouk polynomials")
CasesLoader.register_case("sip-bep-laguerre", _sip_bep_laguerre, "SIP and BEP duality, Laguerre polynomials")
CasesLoader.register_case("bep-bessel", _bep_bessel, "BEP self-duality, Bessel functions")
CasesLoader.register_case("sip-hyp-mp", _sip_hyp_mp, "SIP and HYP duality, Meixner-Pollaczek polynomials")
