"""Regime-classifier golden file: 41 hand-placed rows, matched byte for byte.

Ten (jam ratio, observation ratio) points chosen so every distinct
verdict label in every key regime appears at least once, including the
boundary-flagged zero verdicts; one point is repeated under a second
linear key rate to flip its verdict from exact-via-key to bounds.
"""

from pathlib import Path

from avclab.capacity import KeyRegime
from avclab.csvout import rows_to_bytes
from avclab.experiments import region_sweep

GOLDEN = Path(__file__).parent / "golden" / "table1_points.csv"

# (jam ratio, obs ratio, linear key rate)
POINTS = [
    (0.3, 1.0, 0.2),    # exact list-decoding rate in all four regimes
    (0.3, 5.0, 0.3),    # exact myopic rate in all four regimes
    (2.0, 0.5, 0.2),    # zero in all four regimes
    (0.4, 0.1, 0.1),    # keyless two-sided bounds over the packing rate
    (0.8, 2.0, 0.5),    # keyless myopic bounds; linear key large enough
    (0.8, 1.0, 0.1),    # keyless zero; key too small to pin the rate
    (2.0, 1.0, 1.0),    # zero, exactly on the keyed zero-region edge
    (0.5, 4.0, 0.2),    # exact myopic rate at the packing-rate corner
    (0.75, 1.0, 0.3),   # keyless zero exactly on the mirroring edge
    (1.5, 1.0, 0.2),    # jammer outpowers sender; clamped lower bounds
]
EXTRA_LINEAR = (0.8, 2.0, 0.01)  # 41st row: same point, key too small

COLUMNS = [
    "transmit_power", "jam_power", "obs_noise_var", "regime", "key_rate",
    "kind", "label", "boundary", "cap_lower", "cap_upper",
    "rate_ld", "rate_myop", "rate_gv",
]


def build_rows():
    rows = []
    for t, g, key in POINTS:
        for regime in (KeyRegime.none(), KeyRegime.log_n(),
                       KeyRegime.linear(key), KeyRegime.infinite()):
            rows.extend(region_sweep([g], [t], regime))
    t, g, key = EXTRA_LINEAR
    rows.extend(region_sweep([g], [t], KeyRegime.linear(key)))
    return rows


def test_verdict_rows_match_the_golden_file():
    assert rows_to_bytes(COLUMNS, build_rows()) == GOLDEN.read_bytes()


def test_golden_covers_every_verdict_label():
    rows = build_rows()
    assert len(rows) == 41
    labels = {r["label"] for r in rows}
    assert labels == {
        "none/zero", "none/exact:rate_ld", "none/exact:rate_myop",
        "none/bounds:rate_gv:rate_ld", "none/bounds:rate_gv:rate_myop",
        "log_n/zero", "log_n/exact:rate_ld", "log_n/exact:rate_myop",
        "log_n/bounds:rate_ld:rate_myop",
        "linear/zero", "linear/exact:rate_ld", "linear/exact:rate_myop",
        "linear/exact:rate_myop:key", "linear/bounds:rate_ld:rate_myop",
        "infinite/zero", "infinite/exact:rate_ld", "infinite/exact:rate_myop",
    }
    assert sum(r["boundary"] for r in rows) == 4
    assert all(0.0 <= r["cap_lower"] <= r["cap_upper"] for r in rows)
