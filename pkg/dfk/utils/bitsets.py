"""Finite subsets as int bitmasks over a dense index range."""
from typing import Iterable, Iterator, List, Sequence, Tuple


def bit(index: int) -> int:
    return 1 << index


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for index in indices:
        mask |= 1 << index
    return mask


def members(mask: int) -> List[int]:
    """Indices set in mask, ascending."""
    out = []
    index = 0
    while mask:
        if mask & 1:
            out.append(index)
        mask >>= 1
        index += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(small: int, big: int) -> bool:
    return small & ~big == 0


def submasks(mask: int) -> Iterator[int]:
    """Every submask of mask, including 0 and mask itself, in ascending order."""
    bits = members(mask)
    for combo in range(1 << len(bits)):
        sub = 0
        for position, index in enumerate(bits):
            if combo >> position & 1:
                sub |= 1 << index
        yield sub


def set_key(mask: int) -> Tuple[int, Tuple[int, ...]]:
    """Sort key: cardinality first, then lexicographic on member indices."""
    indices = tuple(members(mask))
    return (len(indices), indices)


def sorted_masks(masks: Iterable[int]) -> List[int]:
    return sorted(set(masks), key=set_key)


def submasks_by_size(mask: int) -> List[int]:
    """Submasks of mask in (size, lexicographic) order."""
    return sorted(submasks(mask), key=set_key)


def labels(mask: int, names: Sequence[str]) -> Tuple[str, ...]:
    return tuple(names[index] for index in members(mask))


def format_set(mask: int, names: Sequence[str]) -> str:
    inner = " ".join(labels(mask, names))
    return "{ " + inner + " }" if inner else "{ }"
