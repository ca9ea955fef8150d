from concurrent.futures import ThreadPoolExecutor

import pytest

from keyak.engine import Engine, Phase
from keyak.errors import PhaseError
from keyak.permutation import PermutationSpec
from keyak.piston import OFFSET_INJECT_END, OFFSET_INJECT_START, Piston
from keyak.streams import ByteStream

F = PermutationSpec(1600, 12)
RS, RA = 168, 192


def make_engine(count=2, executor=None) -> Engine:
    return Engine([Piston(F, RS, RA) for _ in range(count)], executor=executor)


class TestSpark:
    def test_zero_lengths(self, rng):
        e = make_engine()
        before = [bytes(p.state) for p in e.pistons]
        e.spark(False, [0, 0])
        assert e.tag_use == [0, 0]
        for pre, piston in zip(before, e.pistons):
            assert bytes(piston.state) == F.permute(pre)

    def test_single_piston_eom(self):
        e = make_engine(1)
        e.spark(True, [16])
        assert e.tag_use == [16]

    def test_tag_use_tracks_lengths(self):
        e = make_engine()
        e.spark(True, [16, 0])
        assert e.tag_use == [16, 0]

    def test_wrong_vector_length(self):
        with pytest.raises(ValueError):
            make_engine(2).spark(False, [0])

    def test_length_beyond_squeeze_rate(self):
        with pytest.raises(ValueError):
            make_engine(1).spark(False, [RS + 1])


class TestCrypt:
    def test_empty_input_goes_end_of_crypt(self):
        e = make_engine()
        e.crypt(ByteStream(), ByteStream(), unwrap=False)
        assert e.phase is Phase.END_OF_CRYPT

    def test_exact_fill_two_pistons(self):
        e = make_engine(2)
        inp = ByteStream(bytes(2 * RS))
        e.crypt(inp, ByteStream(), unwrap=False)
        assert e.phase is Phase.END_OF_CRYPT
        assert inp.remaining() == 0

    def test_one_byte_over_stays_crypted(self):
        e = make_engine(2)
        inp = ByteStream(bytes(2 * RS + 1))
        e.crypt(inp, ByteStream(), unwrap=False)
        assert e.phase is Phase.CRYPTED
        assert inp.remaining() == 1

    def test_fragments_are_consecutive(self, rng):
        e = make_engine(2)
        data = bytes(rng.getrandbits(8) for _ in range(2 * RS))
        out = ByteStream()
        e.crypt(ByteStream(data), out, unwrap=False)
        # zero states: ciphertext equals plaintext, in piston order
        assert out.getvalue() == data
        assert bytes(e.pistons[0].state[:RS]) == data[:RS]
        assert bytes(e.pistons[1].state[:RS]) == data[RS:]

    def test_fragment_conservation(self, rng):
        for total in (0, 1, RS - 1, RS, RS + 5, 2 * RS, 2 * RS + 9):
            e = make_engine(2)
            e.spark(True, [16, 0])  # uneven tag use
            inp = ByteStream(bytes(total))
            e.crypt(inp, ByteStream(), unwrap=False)
            capacity = (RS - 16) + RS
            assert len(inp) - inp.remaining() == min(total, capacity)

    def test_wrong_phase(self):
        e = make_engine()
        e.inject(ByteStream(b"x"))
        e2 = make_engine()
        e2.crypt(ByteStream(), ByteStream(), unwrap=False)
        with pytest.raises(PhaseError):
            e2.crypt(ByteStream(), ByteStream(), unwrap=False)


class TestInject:
    def test_fresh_empty_meta_no_spark(self):
        e = make_engine()
        before = [bytes(p.state) for p in e.pistons]
        e.inject(ByteStream())
        assert e.phase is Phase.END_OF_MESSAGE
        assert [bytes(p.state) for p in e.pistons] == before  # deferred permute

    def test_end_of_crypt_empty_meta(self):
        e = make_engine()
        e.crypt(ByteStream(), ByteStream(), unwrap=False)
        e.inject(ByteStream())
        assert e.phase is Phase.END_OF_MESSAGE

    def test_crypted_empty_meta_sparks_to_fresh(self):
        e = make_engine(2)
        e.crypt(ByteStream(bytes(2 * RS + 1)), ByteStream(), unwrap=False)
        assert e.phase is Phase.CRYPTED
        before = [bytes(p.state) for p in e.pistons]
        e.inject(ByteStream())
        assert e.phase is Phase.FRESH
        assert [bytes(p.state) for p in e.pistons] != before

    def test_capacity_depends_on_crypting(self):
        # fresh: R_a per piston
        e = make_engine(2)
        meta = ByteStream(bytes(2 * RA + 3))
        e.inject(meta)
        assert meta.remaining() == 3
        # after crypt: R_a - R_s per piston
        e2 = make_engine(2)
        e2.crypt(ByteStream(bytes(1)), ByteStream(), unwrap=False)
        meta2 = ByteStream(bytes(2 * (RA - RS) + 5))
        e2.inject(meta2)
        assert meta2.remaining() == 5

    def test_end_of_message_rejected(self):
        e = make_engine()
        e.inject(ByteStream())
        with pytest.raises(PhaseError):
            e.inject(ByteStream())


class TestGetTags:
    def test_zero_lengths(self):
        e = make_engine()
        e.inject(ByteStream())
        t = ByteStream()
        e.get_tags(t, [0, 0])
        assert len(t) == 0
        assert e.phase is Phase.FRESH

    def test_first_piston_only(self):
        e = make_engine(2)
        e.inject(ByteStream(b"meta"))
        t = ByteStream()
        e.get_tags(t, [16, 0])
        assert len(t) == 16

    def test_tag_bytes_are_post_spark_state(self, rng):
        e = make_engine(2)
        e.inject(ByteStream(b"seed"))
        clones = [bytearray(p.state) for p in e.pistons]
        t = ByteStream()
        e.get_tags(t, [16, 8])
        # trace clone: EOM marker then permutation, then leading state bytes
        expected = b""
        for clone, ln in zip(clones, (16, 8)):
            clone[RA] ^= ln
            expected += F.permute(bytes(clone))[:ln]
        assert t.getvalue() == expected

    def test_wrong_phase(self):
        with pytest.raises(PhaseError):
            make_engine().get_tags(ByteStream(), [0, 0])

    def test_next_crypt_skips_tag_bytes(self, rng):
        e = make_engine(2)
        e.inject(ByteStream(b"start"))
        e.get_tags(ByteStream(), [16, 0])
        keystreams = [bytes(p.state[:RS]) for p in e.pistons]
        pt = bytes(rng.getrandbits(8) for _ in range(60))
        out = ByteStream()
        e.crypt(ByteStream(pt), out, unwrap=False)
        # piston 0's keystream starts at byte E_t[0] = 16, piston 1's at 0
        expected = bytes(a ^ b for a, b in zip(pt, keystreams[0][16:]))
        assert out.getvalue() == expected


class TestInjectCollective:
    def test_empty_no_diversify(self):
        e = make_engine(2)
        before = [bytes(p.state) for p in e.pistons]
        e.inject_collective(ByteStream(), diversify=False)
        assert e.phase is Phase.END_OF_MESSAGE
        assert [bytes(p.state) for p in e.pistons] == before

    def test_empty_with_diversify(self):
        e = make_engine(2)
        e.inject_collective(ByteStream(), diversify=True)
        # piston i absorbed (count, i) at offsets 0..1, no spark yet
        for i, piston in enumerate(e.pistons):
            assert piston.state[0] == 2
            assert piston.state[1] == i
            assert piston.state[RA + OFFSET_INJECT_START] == 0
            assert piston.state[RA + OFFSET_INJECT_END] == 2

    def test_two_blocks_single_intermediate_spark(self):
        e = make_engine(2)
        sparks = []
        original = e.spark

        def counting_spark(eom, lengths):
            sparks.append(list(lengths))
            original(eom, lengths)

        e.spark = counting_spark
        e.inject_collective(ByteStream(bytes(RA + 1)), diversify=False)
        assert sparks == [[0, 0]]
        assert e.phase is Phase.END_OF_MESSAGE

    def test_diversification_injectivity(self, rng):
        import random

        local = random.Random(17)
        f = PermutationSpec(200, 2)
        for _ in range(1000):
            e = Engine([Piston(f, 21, 21) for _ in range(3)])
            payload = bytes(local.getrandbits(8) for _ in range(local.randint(0, 19)))
            e.inject_collective(ByteStream(payload), diversify=True)
            states = [bytes(p.state) for p in e.pistons]
            assert len(set(states)) == 3

    def test_wrong_phase(self):
        e = make_engine()
        e.inject(ByteStream())
        with pytest.raises(PhaseError):
            e.inject_collective(ByteStream(), diversify=False)


class TestParallelExecution:
    def test_parallel_spark_matches_sequential(self, rng):
        with ThreadPoolExecutor(max_workers=4) as pool:
            seq = make_engine(4)
            par = make_engine(4, executor=pool)
            data = bytes(rng.getrandbits(8) for _ in range(4 * RS + 100))
            meta = bytes(rng.getrandbits(8) for _ in range(50))
            out_s, out_p = ByteStream(), ByteStream()
            for engine, out in ((seq, out_s), (par, out_p)):
                inp, ad = ByteStream(data), ByteStream(meta)
                while inp.has_more():
                    engine.crypt(inp, out, unwrap=False)
                    engine.inject(ad)
                tags = ByteStream()
                engine.get_tags(tags, [16, 0, 0, 0])
                out.put_all(tags.getvalue())
            assert out_s.getvalue() == out_p.getvalue()
            assert [bytes(p.state) for p in seq.pistons] == [
                bytes(p.state) for p in par.pistons
            ]
