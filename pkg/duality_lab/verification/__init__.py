import duality_lab.verification.cases_catalog
