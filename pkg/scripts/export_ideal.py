# export_ideal.py - write the configuration ideal of a maximal degeneration to a text file
# Usage: python scripts/export_ideal.py A1^3-N scripts/ideals/a1_3_n.txt
#        python main.py hilbert scripts/ideals/a1_3_n.txt

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from backend.cubic_pairs import config_ideal, stratum_config
from backend.polyring import format_poly


def export_ideal(stratum, out_path):
    cfg = stratum_config(stratum)
    ideal = config_ideal(cfg)
    lines = [f"# {cfg.stratum}: configuration ideal of the 27 limit lines with multiplicity",
             f"# {len(ideal.generators)} generators in x0..x3"]
    lines += [format_poly(g) for g in ideal.generators]
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text("\n".join(lines) + "\n", encoding='utf-8')
    return len(ideal.generators)


def main():
    if len(sys.argv) != 3:
        print("Usage: python scripts/export_ideal.py STRATUM OUT_FILE   (STRATUM is A1^4 or A1^3-N)")
        return 2
    count = export_ideal(sys.argv[1], sys.argv[2])
    print(f"Wrote {count} generators to {sys.argv[2]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
