import math
from typing import Optional

from duality_lab.common.errors import ParameterDomainError
from duality_lab.common.logger import Logger
from duality_lab.common.scalars import ArithmeticMode
from duality_lab.kernels.duality_kernel import JetKernel, KernelFamily
from duality_lab.kernels.hermite import HermiteKernel
from duality_lab.kernels.kernels_loader import KernelsLoader
from duality_lab.kernels.laguerre import LaguerreKernel
from duality_lab.kernels.meixner import KrawtchoukKernel
from duality_lab.kernels.meixner_pollaczek import MeixnerPollaczekKernel
from duality_lab.kernels.orthogonality import kernel_weight, orthogonality_residual, squared_norm
from duality_lab.kernels.quadrature import quadrature_for
from duality_lab.verification_report import Stopwatch, VerificationReport

logger = Logger("gram")

DISCRETE_TOLERANCE = 1e-10
GAUSS_TOLERANCE = 1e-12
LINE_TOLERANCE = 1e-8


def gram_residual(family: KernelFamily, params: dict, trunc: int, nodes: Optional[int] = None) -> VerificationReport:
    """
    max over m, n <= trunc of |<K(m,.), K(n,.)>_w - delta_mn ||K(n,.)||^2| / (||K(m,.)|| ||K(n,.)||)
    Hermite and Laguerre rows pair through a Gauss rule with trunc + 1 nodes unless nodes is given
    """
    kernel = KernelsLoader.load_kernel(KernelFamily(family).value, params)
    if isinstance(kernel, JetKernel):
        raise ParameterDomainError(f"Gram check needs kernel rows indexed by n [kernel: {kernel.label()}]")
    if isinstance(kernel, KrawtchoukKernel):
        trunc = min(trunc, kernel.j)
    quadrature = None
    tolerance = DISCRETE_TOLERANCE
    if isinstance(kernel, (HermiteKernel, LaguerreKernel)):
        quadrature = quadrature_for(kernel_weight(kernel), nodes or trunc + 1)
        tolerance = GAUSS_TOLERANCE
    elif isinstance(kernel, MeixnerPollaczekKernel):
        tolerance = LINE_TOLERANCE
    norms = [math.sqrt(abs(float(squared_norm(kernel, n)))) for n in range(trunc + 1)]
    max_abs, max_rel, points = 0.0, 0.0, 0
    exact = True
    with Stopwatch() as watch:
        for m in range(trunc + 1):
            for n in range(m, trunc + 1):
                report = orthogonality_residual(kernel, m, n, quadrature)
                exact = exact and report.mode == ArithmeticMode.Exact
                max_abs = max(max_abs, report.max_abs_residual)
                max_rel = max(max_rel, report.max_abs_residual / (norms[m] * norms[n]))
                points += 1
    mode = ArithmeticMode.Exact if exact else ArithmeticMode.Float
    report = VerificationReport.evaluate(f"gram:{kernel.label()}:trunc={trunc}", mode, max_abs, max_rel,
                                         0.0 if exact else tolerance, points_checked=points, relative=not exact)
    logger.debug(f"Gram residual [case: {report.case}, relative: {max_rel}]")
    return report.with_timing(watch.elapsed_ms)
