import duality_lab.kernels.bessel
import duality_lab.kernels.charlier
import duality_lab.kernels.exponential
import duality_lab.kernels.hermite
import duality_lab.kernels.laguerre
import duality_lab.kernels.meixner
import duality_lab.kernels.meixner_pollaczek
