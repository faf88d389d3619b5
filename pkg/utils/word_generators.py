import numpy as np
from typing import List, Tuple

from core.words import CyclicWord


class RandomWordGenerator:
    """Generador reproducible de palabras cíclicas para las pruebas aleatorias"""

    def __init__(self, rank: int, seed: int = 0, stream: int = 0):
        """
        Parameters:
        -----------
        rank : int
            Número de generadores del grupo libre (letras 1..rank y sus inversos)
        seed : int
            Semilla; se reduce a 64 bits
        stream : int
            Subsecuencia independiente para la misma semilla (una por identidad)
        """
        if rank < 1:
            raise ValueError("El rango debe ser >= 1")
        self.rank = rank
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.stream = stream
        self.rng = np.random.default_rng([self.seed, stream])

    def random_letter(self, avoid: int = 0) -> int:
        """Letra uniforme entre las 2·rank, rechazando ``-avoid``"""
        while True:
            index = int(self.rng.integers(1, self.rank + 1))
            letter = index if self.rng.random() < 0.5 else -index
            if avoid == 0 or letter != -avoid:
                return letter

    def random_word(self, max_len: int) -> CyclicWord:
        """
        Genera una palabra cíclica no trivial de longitud <= max_len

        Parameters:
        -----------
        max_len : int
            Longitud máxima de la palabra antes de la reducción cíclica

        Returns:
        --------
        word : CyclicWord
            Palabra cíclicamente reducida en forma canónica
        """
        if max_len < 1:
            raise ValueError("La longitud máxima debe ser >= 1")
        length = int(self.rng.integers(1, max_len + 1))
        letters = []
        previous = 0
        for _ in range(length):
            previous = self.random_letter(previous)
            letters.append(previous)
        return CyclicWord.from_letters(letters)

    def random_tuple(self, arity: int, max_len: int) -> Tuple[CyclicWord, ...]:
        return tuple(self.random_word(max_len) for _ in range(arity))

    def generate_trials(self, trials: int, arity: int, max_len: int) -> List[Tuple[CyclicWord, ...]]:
        """Todas las tuplas de prueba, en orden, antes de evaluar ninguna"""
        return [self.random_tuple(arity, max_len) for _ in range(trials)]
