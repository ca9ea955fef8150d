"""Permutation-based crypto toolkit: Keccak-f/Keccak-p, sponge and duplex
constructions, and the Keyak session AEAD instances."""

from .errors import AuthenticationFailure, KeyakError, PhaseError, StreamExhausted
from .permutation import (
    KeccakState,
    PermutationSpec,
    backend_name,
    keccak_f,
    keccak_p,
    permute_bytes,
)
from .sponge import (
    KeyedSpongeParams,
    SpongeParams,
    even_mansour,
    fks,
    inner_keyed_sponge,
    keccak_rc_hash,
    outer_keyed_sponge,
    sponge,
)
from .duplex import Duplex, FullStateKeyedDuplex
from .streams import ByteStream
from .motorist import Motorist, MotoristParams, derive_rates
from .scheme import (
    INSTANCES,
    LAKE,
    LUNAR,
    OCEAN,
    RIVER,
    SEA,
    KeyakInstance,
    aead_decrypt,
    aead_encrypt,
    instance_by_name,
    key_pack,
    make_suv,
    new_session,
)

__version__ = "0.1.0"

__all__ = [
    "AuthenticationFailure",
    "ByteStream",
    "Duplex",
    "FullStateKeyedDuplex",
    "INSTANCES",
    "KeccakState",
    "KeyakError",
    "KeyakInstance",
    "KeyedSpongeParams",
    "LAKE",
    "LUNAR",
    "Motorist",
    "MotoristParams",
    "OCEAN",
    "PermutationSpec",
    "PhaseError",
    "RIVER",
    "SEA",
    "SpongeParams",
    "StreamExhausted",
    "aead_decrypt",
    "aead_encrypt",
    "backend_name",
    "derive_rates",
    "even_mansour",
    "fks",
    "inner_keyed_sponge",
    "instance_by_name",
    "keccak_f",
    "keccak_p",
    "keccak_rc_hash",
    "key_pack",
    "make_suv",
    "new_session",
    "outer_keyed_sponge",
    "permute_bytes",
    "sponge",
]
