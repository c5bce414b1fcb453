from typing import Iterable, Iterator, List

# VertexSet 은 정점 인덱스 비트마스크 (int)


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def popcount(mask: int) -> int:
    return mask.bit_count()


def lowest(mask: int) -> int:
    """가장 작은 원소의 인덱스. mask 는 0 이 아니어야 한다."""
    return (mask & -mask).bit_length() - 1


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_list(mask: int) -> List[int]:
    return list(iter_bits(mask))


def full(n: int) -> int:
    return (1 << n) - 1
