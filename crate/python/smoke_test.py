#!/usr/bin/env python3
"""Smoke test for the wirecal_py extension module.

Builds nothing itself: it looks for the compiled library under target/,
copies it next to a temp directory under the import name, and exercises the
main entry points end to end. Run `cargo build -p wirecal-py` (or --release)
first, then `python3 python/smoke_test.py`.
"""

import json
import math
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def locate_library() -> Path:
    candidates = [
        ROOT / "target" / "release" / "libwirecal_py.so",
        ROOT / "target" / "debug" / "libwirecal_py.so",
    ]
    for c in candidates:
        if c.exists():
            return c
    sys.exit("build the bindings first: cargo build -p wirecal-py")


def import_module():
    lib = locate_library()
    staging = Path(tempfile.mkdtemp(prefix="wirecal_py_"))
    shutil.copy2(lib, staging / "wirecal_py.so")
    sys.path.insert(0, str(staging))
    import wirecal_py

    return wirecal_py


def approx(a, b, tol):
    return abs(a - b) <= tol


def main() -> None:
    wp = import_module()

    model = wp.RobotModel.viper()
    errors = wp.ErrorModel.viper()
    plan = wp.CalibrationPlan.viper()
    anchor = wp.RobotModel.viper_anchor_deg()

    # Forward kinematics at the anchor posture.
    tip = model.tool_point(anchor)
    assert approx(tip[0], 458.0607966083864, 1e-9), tip
    assert approx(tip[1], 0.0, 1e-9), tip
    assert approx(tip[2], 83.48076211353316, 1e-9), tip
    print(f"tool point at anchor: ({tip[0]:.6f}, {tip[1]:.6f}, {tip[2]:.6f})")

    # Sensitivity of the first plan point: the wrist-offset column dominates.
    first_point = plan.points(1)[0]
    row, wire = wp.sensitivity_row(model, first_point, anchor, errors)
    names = errors.names()
    by_name = dict(zip(names, row))
    assert approx(by_name["dtheta6"], -1.07, 0.02), by_name
    others = max(abs(v) for k, v in by_name.items() if k != "dtheta6")
    assert others < 0.01, by_name
    print(f"step 1 isolates dtheta6: psi = {by_name['dtheta6']:.4f}, wire {wire:.1f} mm")

    # Noiseless, unquantized campaign: identification recovers the truth.
    truth = wp.ErrorModel.viper_benchmark_offsets()
    log = wp.simulate_campaign(model, errors, truth, plan, sigma_mm=0.0,
                               resolution_mm=0.0, seed=0)
    report = json.loads(wp.calibrate(model, errors, plan, log, refine=1))
    worst = max(abs(v - t) for v, t in zip(report["values"], truth))
    assert worst < 1e-3, (report["values"], truth)
    print(f"clean round trip (1 refine pass): worst recovery error {worst:.2e}")

    # CSV round trip preserves the measurements bit for bit.
    csv_text = log.to_csv()
    again = wp.CampaignLog.from_csv(csv_text)
    assert again.measurements(1) == log.measurements(1)

    # Inverse kinematics folds a forward pose back to the same joints.
    q = [15.0, -75.0, 185.0, -40.0, 50.0, -110.0]
    pos, rot = model.tool_pose(q)
    solved = None
    for elbow in ("up", "down"):
        for wrist in ("noflip", "flip"):
            sol = wp.solve_ik(model, rot, pos, elbow=elbow, wrist=wrist)
            if sol is None:
                continue
            joints, singular = sol
            if all(abs((a - b + 180.0) % 360.0 - 180.0) < 1e-6
                   for a, b in zip(joints, q)):
                solved = (elbow, wrist)
    assert solved is not None, "no branch reproduced the joints"
    print(f"inverse kinematics branch {solved} reproduces the posture")

    # The calibrated model drives the branch spread toward zero.
    actual = errors.apply(model, truth)
    compensated = errors.apply(model, report["values"])
    before = json.loads(wp.branch_consistency_report(model, actual,
                                                     (800.0, 300.0, 200.0)))
    after = json.loads(wp.branch_consistency_report(compensated, actual,
                                                    (800.0, 300.0, 200.0)))
    assert after["mean_mm"] < 0.05 * before["mean_mm"], (before, after)
    print(f"branch spread {before['mean_mm']:.3f} -> {after['mean_mm']:.4f} mm")

    print("smoke test passed")


if __name__ == "__main__":
    main()
