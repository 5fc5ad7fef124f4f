"""Validates taut --format json output against the class schema."""
import json
import subprocess
import sys

import jsonschema

taut, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)

cases = [
    ["fp", "1"],
    ["fp", "2"],
    ["gs"],
    ["zk"],
    ["restrict", "@fp1"],
    ["--g", "3", "restrict", "@fp2"],
    ["simplify", "0"],
    ["simplify", "--n", "2", "(g+1)/(2*g-3)*D(1,2)*psi(1)^2 - kappa(2)"],
    ["simplify", "--flavor", "pointed", "--n", "3", "D(1,2,3) - o(1)*K(2)"],
]
failed = 0
for args in cases:
    out = subprocess.run([taut, "--format", "json", *args], capture_output=True, text=True, check=True).stdout
    try:
        jsonschema.validate(json.loads(out), schema)
    except jsonschema.ValidationError as e:
        failed += 1
        print("FAIL", " ".join(args), e.message)
print(f"{len(cases) - failed}/{len(cases)} outputs valid")
sys.exit(1 if failed else 0)
