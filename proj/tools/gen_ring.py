#!/usr/bin/env python3
"""Write ring-style token-passing LCS instances ring2..ringN.

Process i waits for a token on channel i, enters its critical section,
leaves it and passes the token on channel i+1. Channels are lossy, so the
token can vanish. The query asks whether two processes can be critical at
the same time; the answer is no.
"""

import argparse
import pathlib


def ring(n: int) -> str:
    idle = [f"idle{i}" for i in range(n)]
    crit = [f"crit{i}" for i in range(n)]
    done = [f"exit{i}" for i in range(n)]
    lines = [f"# token ring with {n} processes", "lcs"]
    lines.append("states " + " ".join(idle + crit + done))
    lines.append("messages tok")
    lines.append(f"channels {n}")
    for i in range(n):
        lines.append(f"rule {idle[i]} -> {crit[i]} recv {i + 1} tok")
        lines.append(f"rule {crit[i]} -> {done[i]} nop")
        lines.append(f"rule {done[i]} -> {idle[i]} send {(i + 1) % n + 1} tok")
    channels = " | ".join(["tok"] + ["-"] * (n - 1))
    lines.append(f"init {' '.join(idle)} | {channels}")
    empty = " | ".join(["-"] * n)
    for i in range(n):
        for j in range(i + 1, n):
            procs = [f"{idle[k]},{crit[k]},{done[k]}" for k in range(n)]
            procs[i] = crit[i]
            procs[j] = crit[j]
            lines.append(f"target {' '.join(procs)} | {empty}")
    return "\n".join(lines) + "\n"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="models", help="output directory")
    ap.add_argument("--min", type=int, default=2)
    ap.add_argument("--max", type=int, default=8)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for n in range(args.min, args.max + 1):
        (out / f"ring{n}.lcs").write_text(ring(n))


if __name__ == "__main__":
    main()
