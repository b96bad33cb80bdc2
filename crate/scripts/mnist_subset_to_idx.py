"""Convert the digit subset bundled in the `mnist` npm package into IDX files.

Usage:
    npm pack mnist && tar xzf mnist-*.tgz
    python3 scripts/mnist_subset_to_idx.py package/src/digits data/mnist-subset

The package stores pixels as decimals in [0, 1] rounded to three places; they
are mapped back to bytes with round(v * 255).
"""
import gzip
import json
import struct
import sys
from pathlib import Path


def main(src: Path, dst: Path) -> None:
    images, labels = [], []
    for digit in range(10):
        with open(src / f"{digit}.json") as fh:
            flat = json.load(fh)["data"]
        assert len(flat) % 784 == 0
        for i in range(len(flat) // 784):
            px = flat[i * 784:(i + 1) * 784]
            images.append(bytes(min(255, max(0, round(v * 255))) for v in px))
            labels.append(digit)
    n = len(images)
    dst.mkdir(parents=True, exist_ok=True)
    with gzip.GzipFile(dst / "images-idx3-ubyte.gz", "wb", mtime=0) as fh:
        fh.write(struct.pack(">IIII", 0x803, n, 28, 28))
        for img in images:
            fh.write(img)
    with gzip.GzipFile(dst / "labels-idx1-ubyte.gz", "wb", mtime=0) as fh:
        fh.write(struct.pack(">II", 0x801, n))
        fh.write(bytes(labels))
    print(f"wrote {n} images; per class {[labels.count(d) for d in range(10)]}")


if __name__ == "__main__":
    main(Path(sys.argv[1]), Path(sys.argv[2]))
