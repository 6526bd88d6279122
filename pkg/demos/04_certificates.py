"""
Re-checkable certificates
=========================

Both certificate kinds are plain JSON with big integers as decimal strings.
The verifiers recompute every recorded value instead of trusting it.
"""

import json

from surdforge import (
    descent_no_solution_certificate,
    irrationality_certificate,
    verify_descent_certificate,
    verify_periodicity_certificate,
)

cert = irrationality_certificate(7).to_json()
print(json.dumps(cert, indent=1))
print("verified:", verify_periodicity_certificate(cert))

##############################################################################
# Changing any single recorded value breaks verification.

tampered = json.loads(json.dumps(cert))
tampered["state_trace"][2][1] = "4"
print("tampered verified:", verify_periodicity_certificate(tampered))

##############################################################################
# The descent certificate covers the box 1 <= a, b <= N.

desc = descent_no_solution_certificate(10**6).to_json()
print(desc["statement"])
print(f"{len(desc['identity_checks'])} identity checks, {len(desc['chains'])} chains,"
      f" longest has {max(map(len, desc['chains']))} pairs")
print("verified:", verify_descent_certificate(desc))
