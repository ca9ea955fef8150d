"""Named Keyak instances, key packs, SUV assembly and one-shot AEAD.

A Keyak instance binds the Motorist mode to a reduced-round permutation:
12 rounds, 256-bit capacity, 128-bit tag, alignment W = max(width/25, 8).
The five published instances are the only ones constructible without going
through KeyakInstance.custom().
"""
from __future__ import annotations

from concurrent.futures import Executor
from dataclasses import dataclass, field

from .errors import AuthenticationFailure
from .motorist import Motorist, MotoristParams
from .padding import enc8, pad10star_bytes
from .permutation import PermutationSpec
from .streams import ByteStream

# (width, pistons) combinations of the published instances.
_NAMED = {
    "river": (800, 1),
    "lake": (1600, 1),
    "sea": (1600, 2),
    "ocean": (1600, 4),
    "lunar": (1600, 8),
}


@dataclass(frozen=True)
class KeyakInstance:
    name: str
    width: int
    pistons: int
    rounds: int = 12
    capacity: int = 256  # bits
    tag_bits: int = 128
    nonstandard: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not self.nonstandard:
            expected = _NAMED.get(self.name)
            if expected != (self.width, self.pistons) or (self.rounds, self.capacity,
                                                          self.tag_bits) != (12, 256, 128):
                raise ValueError(
                    f"{self.name!r} is not a published instance; use KeyakInstance.custom()"
                )

    @classmethod
    def custom(cls, name: str, width: int, pistons: int, rounds: int = 12,
               capacity: int = 256, tag_bits: int = 128) -> "KeyakInstance":
        """Escape hatch for nonstandard parameter sets (tests, experiments)."""
        return cls(name, width, pistons, rounds, capacity, tag_bits, nonstandard=True)

    @property
    def alignment(self) -> int:
        """W in bits."""
        return max(self.width // 25, 8)

    @property
    def key_pack_bytes(self) -> int:
        """l_k: (W/8) * ceil((c + 9) / W)."""
        w = self.alignment
        return (w // 8) * (-(-(self.capacity + 9) // w))

    @property
    def tag_bytes(self) -> int:
        return self.tag_bits // 8

    @property
    def max_key_bytes(self) -> int:
        # One length byte and at least one pad10* byte must fit in the pack.
        return self.key_pack_bytes - 2

    def motorist_params(self) -> MotoristParams:
        return MotoristParams(
            f=PermutationSpec(self.width, self.rounds),
            pistons=self.pistons,
            alignment=self.alignment,
            capacity=self.capacity,
            tag_bits=self.tag_bits,
        )


RIVER = KeyakInstance("river", 800, 1)
LAKE = KeyakInstance("lake", 1600, 1)
SEA = KeyakInstance("sea", 1600, 2)
OCEAN = KeyakInstance("ocean", 1600, 4)
LUNAR = KeyakInstance("lunar", 1600, 8)

INSTANCES = {inst.name: inst for inst in (RIVER, LAKE, SEA, OCEAN, LUNAR)}


def instance_by_name(name: str) -> KeyakInstance:
    try:
        return INSTANCES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown instance {name!r}; pick one of {sorted(INSTANCES)}")


def key_pack(key: bytes, length: int) -> bytes:
    """Length byte, key, pad10* filler; `length` bytes in total."""
    if not length < 256:
        raise ValueError("key pack length must fit one byte")
    if not 1 + len(key) < length:
        raise ValueError(f"key of {len(key)} bytes leaves no pad room in {length}")
    return enc8(length) + key + pad10star_bytes(1 + len(key), length)


def make_suv(instance: KeyakInstance, key: bytes, nonce: bytes) -> bytes:
    """Secret and unique value: key pack followed by the nonce.

    Nonce uniqueness per session is the caller's contract (any length,
    empty only when the key itself is single-use).
    """
    if 8 * len(key) < 128:
        raise ValueError("key shorter than 128 bits")
    if len(key) > instance.max_key_bytes:
        raise ValueError(
            f"key of {len(key)} bytes exceeds the {instance.key_pack_bytes}-byte pack"
        )
    return key_pack(key, instance.key_pack_bytes) + nonce


def new_session(instance: KeyakInstance, key: bytes, nonce: bytes, *,
                unwrap: bool = False, tag_flag: bool = False,
                tag: ByteStream | None = None, forget: bool = False,
                executor: Executor | None = None) -> Motorist:
    """Start a Motorist session keyed with SUV(key, nonce).

    Raises AuthenticationFailure if an unwrap-side startup tag check fails.
    """
    session = Motorist(instance.motorist_params(), executor=executor)
    tag = tag if tag is not None else ByteStream()
    suv = ByteStream(make_suv(instance, key, nonce))
    if not session.start_engine(suv, tag_flag, tag, unwrap, forget):
        raise AuthenticationFailure("session startup tag mismatch")
    return session


def aead_encrypt(instance: KeyakInstance, key: bytes, nonce: bytes,
                 associated_data: bytes, plaintext: bytes) -> tuple[bytes, bytes]:
    """One-shot wrap: a fresh session and a single message.

    The (key, nonce) pair must not be reused. Returns (ciphertext, tag) with
    ciphertext exactly as long as the plaintext.
    """
    session = new_session(instance, key, nonce)
    out, tag = ByteStream(), ByteStream()
    session.wrap(ByteStream(plaintext), out, ByteStream(associated_data), tag,
                 unwrap=False, forget=False)
    return out.getvalue(), tag.getvalue()


def aead_decrypt(instance: KeyakInstance, key: bytes, nonce: bytes,
                 associated_data: bytes, ciphertext: bytes, tag: bytes) -> bytes:
    """One-shot unwrap; the plaintext is returned only if the tag verifies.

    Raises AuthenticationFailure on a bad tag and ValueError on malformed
    parameters (e.g. a truncated tag).
    """
    if len(tag) != instance.tag_bytes:
        raise ValueError(f"tag must be {instance.tag_bytes} bytes, got {len(tag)}")
    session = new_session(instance, key, nonce)
    out = ByteStream()
    ok = session.wrap(ByteStream(ciphertext), out, ByteStream(associated_data),
                      ByteStream(tag), unwrap=True, forget=False)
    if not ok:
        raise AuthenticationFailure("tag mismatch")
    return out.getvalue()
