import duality_lab.montecarlo.checks
