"""Drive the command-line interface end to end from Python.

Writes an instance file, solves it, validates the solution file, rewrites
the problem for another variant, and asks the brute-force oracle for the
true optimum.  Everything goes through the same text formats a user would
edit by hand.
"""
import subprocess
import sys
import tempfile
from pathlib import Path

INSTANCE = """\
repcut instance v1
variant single-to-single
node a
node b
node c
node d
edge a b 3
edge b c 1
edge c d 4
edge a d 2
set 0 a b
set 1 c d
meta origin cli-demo
"""


def run(*args: str, cwd: Path) -> str:
    proc = subprocess.run(
        [sys.executable, "-m", "repcut.cli", *args],
        capture_output=True, text=True, cwd=cwd, timeout=60,
    )
    print(f"$ repcut {' '.join(args)}")
    for line in proc.stdout.splitlines():
        print(f"  {line}")
    if proc.returncode != 0:
        for line in proc.stderr.splitlines():
            print(f"  ! {line}")
    print(f"  (exit {proc.returncode})")
    return proc.stdout


with tempfile.TemporaryDirectory() as tmp:
    cwd = Path(tmp)
    (cwd / "ring.instance").write_text(INSTANCE)

    run("solve", "ring.instance", "--algorithm", "gomory-hu",
        "--solution-out", "ring.solution", cwd=cwd)
    run("validate", "ring.instance", "ring.solution", cwd=cwd)
    run("oracle", "ring.instance", "--engine", "edge-subsets", cwd=cwd)

    # the steiner rewrite reads the weaker some-to-some demands
    pair = INSTANCE.replace("variant single-to-single", "variant some-to-some")
    (cwd / "pair.instance").write_text(pair.replace("meta origin cli-demo\n", ""))
    run("reduce", "pair.instance", "--target", "steiner", cwd=cwd)

    # break the solution on purpose: validation must say no and exit 1
    wrecked = (cwd / "ring.solution").read_text().replace("weight 3", "weight 1")
    (cwd / "wrecked.solution").write_text(wrecked)
    run("validate", "ring.instance", "wrecked.solution", cwd=cwd)
