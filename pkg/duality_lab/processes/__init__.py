import duality_lab.processes.generators_loader
