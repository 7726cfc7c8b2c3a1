"""Randomized verification batteries, as used by the command-line tool.

The same reports are available from the shell:

    chernweil verify-main --samples 100 --dim 3 --out report.json
    chernweil verify-c2 --samples 50 --dim 2 --rank 2 --generators indefinite
    chernweil verify-pushforwards --rank 4 --excess 3 --weight 6
    chernweil check-form point.json --out verdict.json

Run with:  python3 demos/05_theorem_batteries.py
"""

from chernweil import (RunConfig, replay_witness, verify_c2,
                       verify_inequalities, verify_main_theorem,
                       verify_pushforwards)

small = dict(samples=20, starts=16, iters=60, workers=1)

# positive battery: Griffiths-semipositive rank-3 samples never refute the
# Schur form S_(2,1,0), and both computation routes agree
report = verify_main_theorem(RunConfig("verify-main", n=3, r=3, seed=1, **small))
agg = report["aggregate"]
print("main battery:", "ok" if agg["ok"] else "FAILED",
      f"| {agg['samples']} samples, {agg['refuted']} refuted,",
      f"max route gap {agg['max_route_gap']:.2e}")

# c_2 battery with the 2x2-minor identity cross-check
report = verify_c2(RunConfig("verify-c2", n=2, r=2, seed=2, **small))
agg = report["aggregate"]
print("c2 battery:  ", "ok" if agg["ok"] else "FAILED",
      f"| max minor-identity gap {agg['max_minor_identity_gap']:.2e}")

# the inequality chain c1^3 >= c1 c2 >= c3 on rank-3 samples
report = verify_inequalities(RunConfig("verify-ineq", n=3, r=3, seed=3, **small))
print("inequalities:", "ok" if report["aggregate"]["ok"] else "FAILED")

# negative control: planted indefinite samples must produce refutations,
# and each refutation witness must replay from the report alone
report = verify_c2(RunConfig("verify-c2", n=2, r=2, seed=0, samples=30,
                             starts=16, iters=60, workers=1,
                             generators=("indefinite",)))
agg = report["aggregate"]
print("negative battery:", "ok" if agg["ok"] else "FAILED",
      f"| {agg['refuted']} refutations out of {agg['samples']}")
for idx in agg["refuted_indices"][:3]:
    value = replay_witness(report["samples"][idx])
    print(f"  witness {idx} replays to {value:.6f}")

# the exact symbolic suite
report = verify_pushforwards(RunConfig("verify-pushforwards", max_rank=3,
                                       max_excess=2, jt_weight=4))
print("symbolic suite:", "ok" if report["aggregate"]["ok"] else "FAILED")
for check in report["samples"]:
    print(f"  {check['name']}: {'pass' if check['passed'] else 'FAIL'}"
          + (f" ({check['detail']})" if check["detail"] else ""))
