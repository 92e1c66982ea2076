"""
Files, exports, and the command line
====================================

Instances travel as canonical JSON (equal problems give identical bytes),
formulas as DIMACS text with extra rotation lines, witnesses as arc lists,
and anything renders to Graphviz DOT.  The same flows are scriptable through
the `oddorient` command.
"""

import pathlib
import subprocess
import sys
import tempfile

from oddorient import (
    assemble,
    decide,
    export_dot,
    read_formula,
    read_instance,
    write_formula,
    write_instance,
    write_witness,
)
from oddorient.samples import sample_planar_formula

planar = sample_planar_formula()
print(write_formula(planar).decode())

red = assemble(planar)
blob = write_instance(red.problem, rotation=red.rotation,
                      registry=red.registry, formula=red.formula)
print(f"artifact document: {len(blob)} bytes")
bundle = read_instance(blob)
print("round trip intact:", bundle.problem == red.problem)

dot = export_dot(red.problem, registry=red.registry)
print("DOT export:", dot.decode().count("subgraph"), "gadget clusters")

# the CLI drives the same code paths
with tempfile.TemporaryDirectory() as tmp:
    tmp = pathlib.Path(tmp)
    (tmp / "f.cnf").write_bytes(write_formula(planar))

    def cli(*args):
        out = subprocess.run(
            [sys.executable, "-m", "oddorient.cli", *args],
            capture_output=True, text=True,
        )
        return out.returncode, out.stdout.strip()

    code, text = cli("reduce", str(tmp / "f.cnf"), "-o", str(tmp / "art.json"))
    print("\n$ oddorient reduce f.cnf")
    print(text, f"(exit {code})")

    code, text = cli("solve", str(tmp / "art.json"),
                     "--witness", str(tmp / "w.json"))
    print("\n$ oddorient solve art.json --witness w.json")
    print(text, f"(exit {code})")

    code, text = cli("solve", str(tmp / "art.json"),
                     "--check-witness", str(tmp / "w.json"))
    print("\n$ oddorient solve art.json --check-witness w.json")
    print(text, f"(exit {code})")
