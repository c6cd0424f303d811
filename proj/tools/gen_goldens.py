#!/usr/bin/env python3
"""Regenerate tests/fixtures/goldens.txt.

Inputs are tensor dumps produced by `movesense encode --random N --seed S`.
Weights are rebuilt here from the same splitmix64 stream the engine uses, the
SMW1 bytes are re-serialized for the checksum, and outputs come from a
float64 numpy forward pass that shares nothing with the C++ evaluator.

    movesense encode --random 32 --seed 7 --out /tmp/g
    python3 tools/gen_goldens.py --inputs /tmp/g --seed 20241016 --f1 4 --f2 4 \
        --out tests/fixtures/goldens.txt
"""

import argparse
import math
import pathlib
import struct
import subprocess
import sys
import tempfile

import numpy as np

MASK = (1 << 64) - 1
HEADER = b"8 8 26\n"


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def symmetric(self, n):
        bits = np.array([self.next() >> 40 for _ in range(n)], dtype=np.uint32)
        u = bits.astype(np.float32) * np.float32(2.0**-24)
        return np.float32(2.0) * u - np.float32(1.0)


def tensor_specs(f1, f2):
    return [
        ("conv1.weight", (5, 5, 26, f1)),
        ("conv1.bias", (f1,)),
        ("conv2.weight", (3, 3, f1, f2)),
        ("conv2.bias", (f2,)),
        ("fc1.weight", (64 * f2, 500)),
        ("fc1.bias", (500,)),
        ("fc2.weight", (500, 200)),
        ("fc2.bias", (200,)),
        ("out.weight", (200, 2)),
        ("out.bias", (2,)),
    ]


def random_weights(f1, f2, seed):
    rng = SplitMix64(seed)
    weights = {}
    for name, dims in tensor_specs(f1, f2):
        n = math.prod(dims)
        scale = np.float32(0.1)
        if len(dims) > 1:
            out = dims[-1]
            taps = dims[0] * dims[1] if len(dims) == 4 else 1
            scale = np.float32(math.sqrt(6.0 / (n // out + out * taps)))
        weights[name] = (rng.symmetric(n) * scale).astype(np.float32).reshape(dims)
    return weights


def smw1_bytes(weights, f1, f2):
    out = bytearray(b"SMW1")
    specs = tensor_specs(f1, f2)
    out += struct.pack("<I", len(specs))
    for name, dims in specs:
        out += struct.pack("<H", len(name)) + name.encode()
        out += struct.pack("<BB", 0, len(dims))
        out += struct.pack("<%dI" % len(dims), *dims)
        out += weights[name].astype("<f4").tobytes()
    return bytes(out)


def fnv1a64(data):
    h = 0xCBF29CE484222325
    for b in data:
        h = ((h ^ b) * 0x100000001B3) & MASK
    return h


def elu(x):
    return np.where(x >= 0, x, np.expm1(np.minimum(x, 0)))


def conv_same(x, kernel, bias):
    k = kernel.shape[0]
    pad = k // 2
    padded = np.pad(x, ((pad, pad), (pad, pad), (0, 0)))
    out = np.broadcast_to(bias.astype(np.float64), (8, 8, kernel.shape[3])).copy()
    for i in range(k):
        for j in range(k):
            out += padded[i:i + 8, j:j + 8, :] @ kernel[i, j].astype(np.float64)
    return out


def forward(w, x):
    h = elu(conv_same(x, w["conv1.weight"], w["conv1.bias"]))
    h = elu(conv_same(h, w["conv2.weight"], w["conv2.bias"]))
    h = h.reshape(-1)
    h = elu(h @ w["fc1.weight"].astype(np.float64) + w["fc1.bias"])
    h = elu(h @ w["fc2.weight"].astype(np.float64) + w["fc2.bias"])
    z = h @ w["out.weight"].astype(np.float64) + w["out.bias"]
    m = z.max()
    e = np.exp(z - m)
    p = e / e.sum()
    return p[0], p[1]


def read_dump(path):
    data = path.read_bytes()
    if not data.startswith(HEADER) or len(data) != len(HEADER) + 1664 * 4:
        sys.exit(f"{path}: not a tensor dump")
    values = np.frombuffer(data[len(HEADER):], dtype="<f4").astype(np.float64)
    return data, values.reshape(8, 8, 26)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--inputs", type=pathlib.Path, help="directory of tensor dumps (*.bin, sorted by name)")
    src.add_argument("--movesense", type=pathlib.Path, help="engine binary used to create the inputs")
    ap.add_argument("--count", type=int, default=32)
    ap.add_argument("--input-seed", type=int, default=7)
    ap.add_argument("--seed", type=int, default=20241016, help="weights seed")
    ap.add_argument("--f1", type=int, default=4)
    ap.add_argument("--f2", type=int, default=4)
    ap.add_argument("--out", type=pathlib.Path, required=True)
    args = ap.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        inputs = args.inputs
        if args.movesense:
            inputs = pathlib.Path(tmp)
            subprocess.run([str(args.movesense), "encode", "--random", str(args.count),
                            "--seed", str(args.input_seed), "--out", str(inputs)],
                           check=True, stdout=subprocess.DEVNULL)
        dumps = [read_dump(p) for p in sorted(inputs.glob("*.bin"))]

    w = random_weights(args.f1, args.f2, args.seed)
    checksum = fnv1a64(smw1_bytes(w, args.f1, args.f2))
    lines = [
        "# movesense golden fixture",
        f"# seed={args.seed} f1={args.f1} f2={args.f2} weights_fnv1a64={checksum:016x}",
    ]
    for raw, x in dumps:
        g, b = forward(w, x)
        lines.append(f"{raw.hex()} {g:.12f} {b:.12f}")
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text("\n".join(lines) + "\n")
    print(f"{len(dumps)} cases, weights_fnv1a64={checksum:016x}")


if __name__ == "__main__":
    main()
