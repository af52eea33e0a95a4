import argparse
import json
import os
import sys

# Add project root to sys.path
sys.path.append(os.path.join(os.path.dirname(__file__), ".."))

from qcover.algebra.racks import trivial_rack
from qcover.tools.rack_db import rack_to_model

OUT = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "qcover", "data", "tn.json"))


def generate(n: int, out: str = OUT):
    """
    Writes the trivial rack T_n (x < y = x) in the rack JSON format.
    """
    if n < 1:
        print("Error: n must be positive")
        return
    X = trivial_rack(n)
    with open(out, "w") as f:
        json.dump(rack_to_model(X).model_dump(exclude={"row_acts"}), f, indent=2)
    print(f"Wrote T{n} to {out}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Generate the trivial rack T_n")
    parser.add_argument("n", type=int, nargs="?", default=3)
    parser.add_argument("--out", default=OUT)
    args = parser.parse_args()
    generate(args.n, args.out)
