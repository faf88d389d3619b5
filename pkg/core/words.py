"""
Letras, palabras reducidas y palabras cíclicas canónicas.

Una letra se codifica como un entero no nulo: ``+i`` es el generador ``g_i``
y ``-i`` su inverso. En texto, ``a, b, c...`` son generadores y
``A, B, C...`` sus inversos.
"""

import string
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from core.errors import AlphabetMismatchError, WordParseError

Letter = int
Word = Tuple[Letter, ...]

MAX_TEXT_RANK = len(string.ascii_lowercase)


def make_letter(generator_index: int, sign: int = 1) -> Letter:
    """Construye la letra ``g_index^sign``"""
    if generator_index < 1:
        raise ValueError("El índice del generador debe ser >= 1")
    if sign not in (1, -1):
        raise ValueError("El signo debe ser +1 o -1")
    return generator_index * sign


def generator_index(letter: Letter) -> int:
    return abs(letter)


def letter_sign(letter: Letter) -> int:
    return 1 if letter > 0 else -1


def letter_key(letter: Letter) -> int:
    """Orden total g1 < g1^-1 < g2 < g2^-1 < ..."""
    return 2 * (generator_index(letter) - 1) + (1 if letter_sign(letter) < 0 else 0)


def letter_to_char(letter: Letter) -> str:
    index = generator_index(letter)
    if index > MAX_TEXT_RANK:
        raise AlphabetMismatchError(f"El generador {index} no tiene representación textual")
    char = string.ascii_lowercase[index - 1]
    return char if letter_sign(letter) > 0 else char.upper()


def char_to_letter(char: str) -> Letter:
    if char in string.ascii_lowercase:
        return string.ascii_lowercase.index(char) + 1
    if char in string.ascii_uppercase:
        return -(string.ascii_uppercase.index(char) + 1)
    raise ValueError(f"Carácter no válido: {char!r}")


def parse_word(text: str, rank: int = None) -> Word:
    """
    Convierte texto como ``"abAB"`` en una tupla de letras.

    No reduce. Los espacios se ignoran, pero las posiciones reportadas en los
    errores se cuentan sobre el texto original.
    """
    letters = []
    for position, char in enumerate(text):
        if char.isspace():
            continue
        if char not in string.ascii_letters:
            raise WordParseError(f"Carácter no válido {char!r} en la palabra {text!r}", position)
        letter = char_to_letter(char)
        if rank is not None and abs(letter) > rank:
            raise AlphabetMismatchError(
                f"La letra {char!r} excede el rango {rank} de la superficie", position)
        letters.append(letter)
    return tuple(letters)


def format_word(letters: Iterable[Letter]) -> str:
    return "".join(letter_to_char(letter) for letter in letters)


def free_reduce(letters: Iterable[Letter]) -> Word:
    """Cancela pares adyacentes ``x x^-1`` hasta obtener la palabra reducida"""
    stack = []
    for letter in letters:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def _strip_conjugation(word: Word) -> Word:
    start, end = 0, len(word)
    while end - start >= 2 and word[start] == -word[end - 1]:
        start += 1
        end -= 1
    return word[start:end]


def _minimal_rotation(letters: Sequence[Letter]) -> Word:
    if not letters:
        return ()
    keys = [letter_key(letter) for letter in letters]
    size = len(keys)
    best = min(range(size), key=lambda k: keys[k:] + keys[:k])
    return tuple(letters[best:]) + tuple(letters[:best])


@dataclass(frozen=True)
class CyclicWord:
    """
    Palabra cíclicamente reducida almacenada en su rotación mínima.

    Representa una clase de homotopía libre de lazos. La palabra vacía es la
    clase trivial. Use ``CyclicWord.from_letters`` para construirla a partir
    de letras arbitrarias.
    """
    letters: Word = ()

    @classmethod
    def from_letters(cls, letters: Iterable[Letter]) -> "CyclicWord":
        return cyclic_reduce(free_reduce(letters))

    @classmethod
    def parse(cls, text: str, rank: int = None) -> "CyclicWord":
        return cls.from_letters(parse_word(text, rank))

    @property
    def is_trivial(self) -> bool:
        return not self.letters

    @property
    def rank(self) -> int:
        """Mayor índice de generador que aparece"""
        return max((abs(letter) for letter in self.letters), default=0)

    @property
    def sort_key(self):
        return (len(self.letters), tuple(letter_key(letter) for letter in self.letters))

    def __len__(self):
        return len(self.letters)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def rotation(self, k: int) -> Word:
        """Lectura de la palabra empezando en la letra ``k`` (0-based)"""
        k %= max(len(self.letters), 1)
        return self.letters[k:] + self.letters[:k]

    def inverse(self) -> "CyclicWord":
        return canonical_form(tuple(-letter for letter in reversed(self.letters)))

    def __str__(self):
        return format_word(self.letters) if self.letters else "1"


TRIVIAL = CyclicWord(())


def cyclic_reduce(word: Word) -> CyclicWord:
    """Elimina conjugaciones ``x w x^-1`` y devuelve la forma canónica"""
    return canonical_form(_strip_conjugation(tuple(word)))


def canonical_form(letters: Sequence[Letter]) -> CyclicWord:
    """Rotación mínima de una palabra cíclicamente reducida"""
    return CyclicWord(_minimal_rotation(letters))
