#!/usr/bin/env python3
"""
Descriptor corpus generator
Writes seeded synthetic manifold descriptors for experimenting with blowdowns
"""

import argparse
import random
from fractions import Fraction
from pathlib import Path
from typing import List

from src.contfrac import chain_coeffs, classical_chain
from src.descriptor import save_descriptor
from src.plumbing import SphereChain
from src.surgery import ManifoldDescriptor
from src.toolkit import coprime_pairs


class DescriptorCorpus:
    """
    Synthetic descriptors carrying blowdown-ready sphere chains
    Each record is CP2 # N(-CP2) with enough b2 to hold its chains
    """

    def __init__(self, out_dir: str = "corpus", seed: int = 20240611):
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.rng = random.Random(seed)

    def _area(self) -> Fraction:
        return Fraction(self.rng.randint(1, 12), self.rng.randint(1, 6))

    def _record(self, chains: List[SphereChain], spare: int, with_volume: bool) -> ManifoldDescriptor:
        b2 = sum(c.k for c in chains) + spare
        volume = None
        if with_volume and all(c.areas is not None for c in chains):
            # room for every chain polygon plus some
            volume = sum(sum(c.areas) for c in chains) * 4 + self.rng.randint(1, 20)
        return ManifoldDescriptor(
            name=f"CP2#{b2 - 1}-CP2",
            euler=2 + b2,
            signature=2 - b2,
            b2=b2,
            chains=tuple(chains),
            symplectic_volume=volume,
        )

    def generate_classical(self, n_max: int = 8) -> List[ManifoldDescriptor]:
        """One record per classical chain (n+2, 2, ..., 2), n >= 2."""
        records = []
        for n in range(2, n_max + 1):
            coeffs = classical_chain(n).coeffs
            chain = SphereChain(coeffs, tuple(self._area() for _ in coeffs))
            records.append(self._record([chain], spare=self.rng.randint(1, 6), with_volume=True))
        return records

    def generate_random(self, count: int = 20, n_max: int = 12) -> List[ManifoldDescriptor]:
        pairs = coprime_pairs(n_max)
        records = []
        for i in range(count):
            chains = []
            for _ in range(1 + (i % 3 == 0)):
                n, m = self.rng.choice(pairs)
                coeffs = chain_coeffs(n, m).coeffs
                if self.rng.random() < 0.3:
                    coeffs = tuple(reversed(coeffs))
                areas = None if self.rng.random() < 0.1 else tuple(self._area() for _ in coeffs)
                chains.append(SphereChain(coeffs, areas))
            records.append(self._record(chains, spare=self.rng.randint(0, 8), with_volume=i % 2 == 0))
        return records

    def save_corpus(self, records: List[ManifoldDescriptor], prefix: str) -> List[Path]:
        paths = []
        for i, descr in enumerate(records, 1):
            paths.append(save_descriptor(descr, self.out_dir / f"{prefix}_{i:03d}.json"))
        return paths


def main(argv=None):
    parser = argparse.ArgumentParser(description="Generate synthetic descriptor files")
    parser.add_argument("--out-dir", default="corpus")
    parser.add_argument("--count", type=int, default=20)
    parser.add_argument("--n-max", type=int, default=8)
    parser.add_argument("--seed", type=int, default=20240611)
    args = parser.parse_args(argv)

    print("=" * 60)
    print("DESCRIPTOR CORPUS")
    print("=" * 60)

    corpus = DescriptorCorpus(args.out_dir, args.seed)
    classical = corpus.save_corpus(corpus.generate_classical(args.n_max), "classical")
    print(f"   classical chains: {len(classical)}")
    random_records = corpus.save_corpus(corpus.generate_random(args.count), "random")
    print(f"   random chains:    {len(random_records)}")
    print(f"   written to {corpus.out_dir}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
