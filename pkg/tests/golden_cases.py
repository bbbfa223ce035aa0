"""Golden sweep CSVs: file name -> CLI arguments.

Regenerate with ``python tests/golden_cases.py`` after an intentional change.
"""

from pathlib import Path

GOLDEN_DIR = Path(__file__).parent / "golden"

CASES = {
    "antennas_nt10_setup1.csv": "sweep antennas --rays 10 --from 1 --to 50 --setup 1 --snr-db 0",
    "antennas_nt10_setup2.csv": "sweep antennas --rays 10 --from 1 --to 50 --setup 2 --snr-db 0",
    "rays_nr10_setup1.csv": "sweep rays --antennas 10 --from 1 --to 50 --setup 1 --snr-db 0",
    "rays_nr10_setup2.csv": "sweep rays --antennas 10 --from 1 --to 50 --setup 2 --snr-db 0",
    "snr_10x10_setup2.csv": "sweep snr --antennas 10 --rays 10 --setup 2",
    "snr_20x20_setup1.csv": "sweep snr --antennas 20 --rays 20 --from -10 --to 30 --step 5 --setup 1",
    "snr_20x20_setup2.csv": "sweep snr --antennas 20 --rays 20 --from -10 --to 30 --step 5 --setup 2",
    "phi_4x4_nt10_setup2.csv": "sweep phi --side 4 --rays 10 --setup 2 --snr-db 0",
    "lvs_25_nt20_10db.csv": "sweep linear-vs-square --elements 25 --rays 20 --from 10 --to 10",
}


def regenerate() -> None:
    from raycap.cli import main

    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, args in CASES.items():
        code = main(args.split() + ["--reproducible", "--out", str(GOLDEN_DIR / name)])
        if code:
            raise SystemExit(f"{name}: exit {code}")


if __name__ == "__main__":
    regenerate()
