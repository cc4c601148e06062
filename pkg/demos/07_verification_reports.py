"""
Verification reports
====================

Each suite returns a Report of named checks; the same reports back the
``zetadist verify`` command.
"""
from zetadist.mcverify import VerificationConfig, run_suite

rep = run_suite(VerificationConfig("interpolation", p=5, n_max=2, k_range=(2, 6, 10)))
print(rep.to_text())

rep = run_suite(VerificationConfig("irregular", p=37))
print(rep.to_text())
print("exit status:", rep.exit_status)
