# orl/infrastructure/random_streams.py
"""
Flux pseudo-aléatoires nommés dérivés d'une seule graine par exécution.

Chaque sous-système tire son flux d'un nom stable : l'ordre des appels
ailleurs n'influence pas ses tirages.
"""
import zlib
from typing import Union

import numpy as np


class RandomStreams:

    def __init__(self, seed: int):
        if seed < 0 or seed >= 2 ** 64:
            raise ValueError(f"seed must lie in [0, 2^64), got {seed}")
        self.seed = seed
        self._root = np.random.SeedSequence(seed)

    @staticmethod
    def _key(name: Union[str, int]) -> int:
        if isinstance(name, int):
            return name
        return zlib.crc32(name.encode("utf-8"))

    def _sequence(self, *names: Union[str, int]) -> np.random.SeedSequence:
        keys = tuple(self._key(name) for name in names)
        return np.random.SeedSequence(self._root.entropy, spawn_key=keys)

    def stream(self, *names: Union[str, int]) -> np.random.Generator:
        return np.random.default_rng(self._sequence(*names))

    def child_seed(self, *names: Union[str, int]) -> int:
        """Graine 64 bits pour un sous-système qui reconstruit ses propres flux"""
        state = self._sequence(*names).generate_state(2, dtype=np.uint32)
        return int(state[0]) | (int(state[1]) << 32)

    def child(self, *names: Union[str, int]) -> "RandomStreams":
        return RandomStreams(self.child_seed(*names))
