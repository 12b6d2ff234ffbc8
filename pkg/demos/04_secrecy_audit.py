"""
Auditing the zero-leakage claim, and watching it fail
=====================================================

The audit enumerates every (message, randomness) pair and every full-rank
tap matrix, then computes the mutual information between the secret and
the tapped view from exact integer counts.  Zero means the conditional
view distributions are literally identical, not numerically small.

The negative control spoils the code so the last generator row stops
being rank-spread; certain taps then see the whole message.
"""

from secnc import (
    SchemeParams,
    build_broken_instance,
    build_instance,
    secrecy_audit,
)

params = SchemeParams(q=2, m=4, n=4, t=1, mu=1, k=1)

rep = secrecy_audit(build_instance(params))
print("conformant scheme,", len(rep.records), "taps:")
for line in rep.lines()[:4]:
    print(" ", line)
print("  ...")
print("max leakage:", rep.max_leakage, " verdict:",
      "pass" if rep.passed else "FAIL")

print()

bad = secrecy_audit(build_broken_instance(params))
print("spoiled scheme:")
for tid, leak in bad.records:
    if leak > 0:
        print(f"  B={tid} leaks {leak} bits")
print("max leakage:", bad.max_leakage, " verdict:",
      "pass" if bad.passed else "FAIL")
