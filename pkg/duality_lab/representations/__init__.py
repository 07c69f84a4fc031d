import duality_lab.representations.heisenberg
import duality_lab.representations.su11
