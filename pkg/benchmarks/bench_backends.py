#!/usr/bin/env python3
"""Compare the compiled permutation kernel against the pure-Python fallback.

Measures raw permutation throughput and end-to-end session wrap speed by
swapping the backend module underneath keyak.permutation. Run from the repo
root:

    python3 benchmarks/bench_backends.py
"""
import time

import keyak.permutation as perm
from keyak import _keccak_pure
from keyak.scheme import LAKE, new_session
from keyak.streams import ByteStream

BACKENDS = {"pure-python": _keccak_pure}
if perm.KERNEL_LOADED:
    from keyak import _keccak_kernel

    BACKENDS["compiled"] = _keccak_kernel


def timed(fn, min_seconds=0.4):
    """Calls per second of fn."""
    calls = 0
    start = time.perf_counter()
    elapsed = 0.0
    while elapsed < min_seconds:
        fn()
        calls += 1
        elapsed = time.perf_counter() - start
    return calls / elapsed


def bench_permutation(width: int, rounds: int) -> dict[str, float]:
    data = bytes(range(256)) * (width // 8 // 25 * 25)
    data = data[: width // 8]
    results = {}
    for name, backend in BACKENDS.items():
        results[name] = timed(
            lambda: backend.permute(data, 0, rounds, perm.ROUND_CONSTANTS)
        )
    return results


def bench_lake_wrap(message_bytes: int) -> dict[str, float]:
    key, nonce = bytes(16), bytes(16)
    pt = bytes(message_bytes)
    results = {}
    original = perm._backend
    try:
        for name, backend in BACKENDS.items():
            perm._backend = backend

            def wrap_once():
                session = new_session(LAKE, key, nonce)
                out, tag = ByteStream(), ByteStream()
                session.wrap(ByteStream(pt), out, ByteStream(), tag,
                             unwrap=False, forget=False)

            per_sec = timed(wrap_once, min_seconds=1.0)
            results[name] = per_sec * message_bytes / 1e6  # MB/s
    finally:
        perm._backend = original
    return results


def report(title: str, unit: str, results: dict[str, float]) -> None:
    print(f"\n{title}")
    baseline = results.get("pure-python")
    for name, value in sorted(results.items()):
        ratio = f"  ({value / baseline:.1f}x)" if name != "pure-python" and baseline else ""
        print(f"  {name:12s} {value:12,.1f} {unit}{ratio}")


def main() -> None:
    print(f"selected backend at import: {perm.backend_name()}")
    if not perm.KERNEL_LOADED:
        print("compiled kernel unavailable; benchmarking the fallback only")

    report("Keccak-f[1600], 24 rounds", "perms/s", bench_permutation(1600, 24))
    report("Keccak-p[1600, 12]", "perms/s", bench_permutation(1600, 12))
    report("Keccak-p[800, 12]", "perms/s", bench_permutation(800, 12))
    report("Lake wrap, 1 MiB message", "MB/s", bench_lake_wrap(1 << 20))


if __name__ == "__main__":
    main()
