#!/usr/bin/env python3
"""Fetch the three experiment datasets into a data directory.

Writes titanic.csv, boston.csv and diabetes.csv. Each dataset is taken from
the first source that works:

  titanic   1309-passenger table bundled with the `dabl` package, or a URL
  boston    MASS::Boston bundled with the `rdatasets` package, or a URL
  diabetes  the raw (unscaled) copy shipped with scikit-learn

Packages that are not installed are downloaded as wheels with `pip download`
and read in place; nothing is installed.

Usage: python3 scripts/fetch_datasets.py [--out data] [--force]
"""

import argparse
import importlib.util
import io
import subprocess
import sys
import tempfile
import urllib.request
import zipfile
from pathlib import Path

import pandas as pd

TITANIC_URLS = [
    "https://hbiostat.org/data/repo/titanic3.csv",
    "https://raw.githubusercontent.com/dabl/dabl/main/dabl/datasets/titanic.csv",
]
BOSTON_URLS = [
    "https://raw.githubusercontent.com/vincentarelbundock/Rdatasets/master/csv/MASS/Boston.csv",
]


def wheel_member(package, member, tmp):
    """Bytes of `member` from a downloaded wheel of `package`, or None."""
    cmd = [sys.executable, "-m", "pip", "download", "--no-deps", "-q", "--timeout", "120",
           "-d", str(tmp), package]
    if subprocess.run(cmd).returncode != 0:
        return None
    for wheel in Path(tmp).glob("*.whl"):
        with zipfile.ZipFile(wheel) as z:
            if member in z.namelist():
                return z.read(member)
    return None


def package_member(package, member, tmp):
    """Reads `member` from an installed package, falling back to its wheel."""
    spec = importlib.util.find_spec(package)
    if spec is not None and spec.origin:
        path = Path(spec.origin).parent.parent / member
        if path.exists():
            return path.read_bytes()
    return wheel_member(package, member, tmp)


def from_urls(urls):
    for url in urls:
        try:
            with urllib.request.urlopen(url, timeout=60) as r:
                return r.read()
        except Exception as e:
            print(f"  {url}: {e}", file=sys.stderr)
    return None


def titanic(tmp):
    raw = package_member("dabl", "dabl/datasets/titanic.csv", tmp) or from_urls(TITANIC_URLS)
    if raw is None:
        return None
    df = pd.read_csv(io.BytesIO(raw), na_values=["?"])
    keep = ["pclass", "survived", "sex", "age", "sibsp", "parch", "fare", "embarked"]
    df.columns = [c.lower() for c in df.columns]
    return df[keep]


def boston(tmp):
    raw = None
    blob = package_member("rdatasets", "rdatasets/_data/MASS/Boston.pkl.compress", tmp)
    if blob is not None:
        df = pd.read_pickle(io.BytesIO(blob), compression="xz")
    else:
        raw = from_urls(BOSTON_URLS)
        if raw is None:
            return None
        df = pd.read_csv(io.BytesIO(raw))
    df = df.drop(columns=[c for c in df.columns if c.lower() in ("rownames", "unnamed: 0")])
    df.columns = [c.upper() for c in df.columns]
    return df


def diabetes(_tmp):
    from sklearn.datasets import load_diabetes

    d = load_diabetes(scaled=False, as_frame=True)
    df = d.frame.rename(columns={"target": "Y"})
    df.columns = [c.upper() for c in df.columns]
    return df


EXPECTED = {"titanic": (1309, titanic), "boston": (506, boston), "diabetes": (442, diabetes)}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="data", type=Path)
    ap.add_argument("--force", action="store_true", help="overwrite existing files")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    failed = []
    for name, (rows, fetch) in EXPECTED.items():
        target = args.out / f"{name}.csv"
        if target.exists() and not args.force:
            print(f"{target} exists, skipping")
            continue
        with tempfile.TemporaryDirectory() as tmp:
            df = fetch(tmp)
        if df is None:
            print(f"{name}: no source reachable", file=sys.stderr)
            failed.append(name)
            continue
        if len(df) != rows:
            print(f"{name}: expected {rows} rows, got {len(df)}", file=sys.stderr)
            failed.append(name)
            continue
        df.to_csv(target, index=False)
        print(f"wrote {target} ({len(df)} rows)")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
