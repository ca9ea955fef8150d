"""Command-line front end.

Subcommands: hash (sponge hashing), wrap/unwrap (file AEAD), vectors
(deterministic test-vector generation and re-verification), perm
(permutation debugging, optionally through the bit-level oracle).

Exit codes: 0 success, 1 usage or I/O error, 2 authentication/verification
failure.
"""
from __future__ import annotations

import argparse
import sys

from .bits import bits_to_bytes, bytes_to_bits
from .errors import KeyakError
from .motorist import Motorist
from .oracle import oracle_permutation
from .permutation import (
    KeccakState,
    PermutationSpec,
    full_round_count,
    round_constant,
    round_trace,
    width_log_for,
)
from .scheme import KeyakInstance, instance_by_name, new_session
from .sponge import SpongeParams, sponge
from .streams import ByteStream

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_AUTH = 2


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _hex_bytes(text: str) -> bytes:
    try:
        return bytes.fromhex(text)
    except ValueError:
        raise CliError(f"invalid hex string {text!r}")


def _read_input(path: str | None) -> bytes:
    if path is None or path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")


def _write_output(path: str, data: bytes) -> None:
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}")


# hash


def cmd_hash(args) -> int:
    if args.rate % 8 or args.rate < 8:
        raise CliError("rate must be a positive multiple of 8")
    if args.rate + args.capacity not in (800, 1600):
        raise CliError("rate + capacity must be 800 or 1600")
    if args.bits < 0:
        raise CliError("output length must be non-negative")
    params = SpongeParams(PermutationSpec.full(args.rate + args.capacity), args.rate)
    digest = sponge(params, _read_input(args.file), args.bits)
    print(digest.hex())
    return EXIT_OK


# wrap / unwrap


def _session_for(args, unwrap: bool) -> Motorist:
    instance = instance_by_name(args.instance)
    key = _hex_bytes(args.key)
    nonce = _hex_bytes(args.nonce)
    try:
        return new_session(instance, key, nonce, unwrap=unwrap)
    except ValueError as exc:
        raise CliError(str(exc))


def cmd_wrap(args) -> int:
    session = _session_for(args, unwrap=False)
    instance = instance_by_name(args.instance)
    plaintext = _read_input(args.input)
    ad = _read_input(args.ad) if args.ad else b""
    out, tag = ByteStream(), ByteStream()
    session.wrap(ByteStream(plaintext), out, ByteStream(ad), tag,
                 unwrap=False, forget=args.forget)
    tag_bytes = tag.getvalue()
    assert len(tag_bytes) == instance.tag_bytes
    if args.tag_append:
        _write_output(args.output, out.getvalue() + tag_bytes)
    else:
        _write_output(args.output, out.getvalue())
        _write_output(args.tag_file or args.output + ".tag", tag_bytes.hex().encode() + b"\n")
    print(tag_bytes.hex())
    return EXIT_OK


def cmd_unwrap(args) -> int:
    instance = instance_by_name(args.instance)
    data = _read_input(args.input)
    ad = _read_input(args.ad) if args.ad else b""
    if args.tag_append:
        if len(data) < instance.tag_bytes:
            raise CliError("input shorter than an appended tag")
        ciphertext, tag_bytes = data[: -instance.tag_bytes], data[-instance.tag_bytes :]
    else:
        ciphertext = data
        if args.tag:
            tag_bytes = _hex_bytes(args.tag)
        elif args.tag_file:
            tag_bytes = _hex_bytes(_read_input(args.tag_file).decode().strip())
        else:
            raise CliError("one of --tag, --tag-file or --tag-append is required")
        if len(tag_bytes) != instance.tag_bytes:
            raise CliError(f"tag must be {instance.tag_bytes} bytes")
    session = _session_for(args, unwrap=True)
    out = ByteStream()
    ok = session.wrap(ByteStream(ciphertext), out, ByteStream(ad),
                      ByteStream(tag_bytes), unwrap=True, forget=args.forget)
    if not ok:
        print("authentication failure", file=sys.stderr)
        return EXIT_AUTH
    _write_output(args.output, out.getvalue())
    return EXIT_OK


# vectors

_XOF_PARAMS = SpongeParams(PermutationSpec.full(1600), 1088)

_FIELDS = ("Instance", "Key", "Nonce", "AD", "PT", "CT", "Tag", "Forget")


def _vector_stream(seed: bytes, index: int, nbytes: int) -> bytes:
    """Deterministic keystream for record `index`: XOF(seed || index)."""
    return sponge(_XOF_PARAMS, seed + index.to_bytes(4, "little"), 8 * nbytes)


def derive_vector_record(instance: KeyakInstance, seed: bytes, index: int) -> dict:
    """Derive one test-vector record (inputs and expected outputs)."""
    params = instance.motorist_params()
    head = _vector_stream(seed, index, 8)
    key_len = 16 + head[0] % (instance.max_key_bytes - 16 + 1)
    nonce_len = head[1] % ((58 if instance.width == 800 else 150) + 1)
    ad_len = int.from_bytes(head[2:4], "little") % (2 * params.absorb_rate * instance.pistons + 1)
    pt_len = int.from_bytes(head[4:6], "little") % (2 * params.squeeze_rate * instance.pistons + 1)
    forget = bool(head[6] & 1)
    total = 8 + key_len + nonce_len + ad_len + pt_len
    body = _vector_stream(seed, index, total)[8:]
    key, body = body[:key_len], body[key_len:]
    nonce, body = body[:nonce_len], body[nonce_len:]
    ad, pt = body[:ad_len], body[ad_len:]

    session = new_session(instance, key, nonce)
    out, tag = ByteStream(), ByteStream()
    session.wrap(ByteStream(pt), out, ByteStream(ad), tag, unwrap=False, forget=forget)
    return {
        "Instance": instance.name,
        "Key": key.hex(),
        "Nonce": nonce.hex(),
        "AD": ad.hex(),
        "PT": pt.hex(),
        "CT": out.getvalue().hex(),
        "Tag": tag.getvalue().hex(),
        "Forget": "1" if forget else "0",
    }


def format_records(records: list[dict]) -> str:
    blocks = []
    for rec in records:
        blocks.append("\n".join(f"{name}: {rec[name]}".rstrip() for name in _FIELDS))
    return "\n\n".join(blocks) + "\n"


def parse_records(text: str) -> list[dict]:
    records = []
    for blocknum, block in enumerate(text.strip().split("\n\n"), 1):
        rec = {}
        for line in block.splitlines():
            name, _, value = line.partition(":")
            if name not in _FIELDS:
                raise CliError(f"record {blocknum}: unknown field {name!r}")
            rec[name] = value.strip()
        missing = [name for name in _FIELDS if name not in rec]
        if missing:
            raise CliError(f"record {blocknum}: missing fields {missing}")
        records.append(rec)
    return records


def cmd_vectors(args) -> int:
    if args.check:
        return _check_vectors(args.check)
    if args.count is None or args.seed is None or args.instance is None:
        raise CliError("--instance, --count and --seed are required to emit vectors")
    if args.count < 1:
        raise CliError("count must be positive")
    instance = instance_by_name(args.instance)
    seed = _hex_bytes(args.seed)
    records = [derive_vector_record(instance, seed, i) for i in range(args.count)]
    text = format_records(records)
    if args.out:
        _write_output(args.out, text.encode())
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _check_vectors(path: str) -> int:
    records = parse_records(_read_input(path).decode())
    for num, rec in enumerate(records, 1):
        instance = instance_by_name(rec["Instance"])
        try:
            key, nonce, ad = (bytes.fromhex(rec[f]) for f in ("Key", "Nonce", "AD"))
            pt, ct, tag = (bytes.fromhex(rec[f]) for f in ("PT", "CT", "Tag"))
            forget = rec["Forget"] == "1"
        except ValueError:
            raise CliError(f"record {num}: malformed hex")
        session = new_session(instance, key, nonce, unwrap=True)
        out = ByteStream()
        ok = session.wrap(ByteStream(ct), out, ByteStream(ad), ByteStream(tag),
                          unwrap=True, forget=forget)
        if not ok or out.getvalue() != pt:
            print(f"record {num}: verification failed", file=sys.stderr)
            return EXIT_AUTH
    print(f"{len(records)} records verified")
    return EXIT_OK


# perm


def cmd_perm(args) -> int:
    if args.width % 8:
        raise CliError("width must be byte-aligned (200, 400, 800 or 1600)")
    try:
        full = full_round_count(args.width)
    except ValueError as exc:
        raise CliError(str(exc))
    if not 1 <= args.rounds <= full:
        raise CliError(f"rounds must be within 1..{full}")
    if args.oracle and args.trace:
        raise CliError("--trace is only available on the lane path")
    state = _hex_bytes(sys.stdin.read().strip())
    if len(state) != args.width // 8:
        raise CliError(f"state must be {args.width // 8} bytes, got {len(state)}")

    if args.oracle:
        bits = oracle_permutation(
            bytes_to_bits(state), args.rounds, width_log_for(args.width)
        )
        print(bits_to_bytes(bits).hex())
        return EXIT_OK

    ks = KeccakState.from_bytes(state)
    if args.trace:
        l = ks.width_log
        for i in range(full - args.rounds, full):
            for name, step_state in round_trace(ks, round_constant(i, l)):
                print(f"round {i} {name}: {step_state.to_bytes().hex()}")
                ks = step_state
        print(ks.to_bytes().hex())
    else:
        print(PermutationSpec(args.width, args.rounds).permute(state).hex())
    return EXIT_OK


# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="keyak", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hash", help="sponge hash of a file or stdin")
    p.add_argument("--rate", type=int, required=True, help="bitrate in bits")
    p.add_argument("--capacity", type=int, required=True, help="capacity in bits")
    p.add_argument("--bits", type=int, required=True, help="output length in bits")
    p.add_argument("file", nargs="?", help="input file (default stdin)")
    p.set_defaults(func=cmd_hash)

    for name, func in (("wrap", cmd_wrap), ("unwrap", cmd_unwrap)):
        p = sub.add_parser(name, help=f"{name} a file in a one-message session")
        p.add_argument("--instance", required=True,
                       help="river, lake, sea, ocean or lunar")
        p.add_argument("--key", required=True, help="key as hex")
        p.add_argument("--nonce", required=True, help="nonce as hex")
        p.add_argument("--ad", help="associated-data file")
        p.add_argument("--forget", action="store_true",
                       help="make a rollback-resistance knot")
        p.add_argument("--tag-append", action="store_true",
                       help="carry the tag at the end of the ciphertext file")
        p.add_argument("--tag-file", help="sidecar tag file (hex)")
        if name == "unwrap":
            p.add_argument("--tag", help="expected tag as hex")
        p.add_argument("input")
        p.add_argument("output")
        p.set_defaults(func=func)

    p = sub.add_parser("vectors", help="emit or check deterministic test vectors")
    p.add_argument("--instance", help="river, lake, sea, ocean or lunar")
    p.add_argument("--count", type=int, help="number of records")
    p.add_argument("--seed", help="seed as hex")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--check", metavar="FILE", help="re-verify an emitted file")
    p.set_defaults(func=cmd_vectors)

    p = sub.add_parser("perm", help="apply the permutation to a hex state on stdin")
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--oracle", action="store_true",
                   help="use the bit-level reference implementation")
    p.add_argument("--trace", action="store_true",
                   help="print the state after each round step")
    p.set_defaults(func=cmd_perm)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"keyak: {exc}", file=sys.stderr)
        return exc.code
    except (KeyakError, ValueError, OSError) as exc:
        print(f"keyak: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
