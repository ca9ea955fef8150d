import io

from keyak.cli import derive_vector_record, format_records, main, parse_records
from keyak.scheme import RIVER

EMPTY_DIGEST = "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470"
KEY_HEX = "000102030405060708090a0b0c0d0e0f"
GOLDEN_F1600 = open("tests/data/keccak_f1600_zero.hex").read().strip()


def run(argv, stdin: str | None = None, monkeypatch=None) -> int:
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    return main(argv)


class TestHash:
    def test_empty_input_golden(self, tmp_path, capsys):
        f = tmp_path / "empty"
        f.write_bytes(b"")
        assert main(["hash", "--rate", "1088", "--capacity", "512",
                     "--bits", "256", str(f)]) == 0
        assert capsys.readouterr().out.strip() == EMPTY_DIGEST

    def test_zero_bits(self, tmp_path, capsys):
        f = tmp_path / "m"
        f.write_bytes(b"data")
        assert main(["hash", "--rate", "1088", "--capacity", "512",
                     "--bits", "0", str(f)]) == 0
        assert capsys.readouterr().out == "\n"

    def test_misaligned_rate_usage_error(self, tmp_path):
        f = tmp_path / "m"
        f.write_bytes(b"")
        assert main(["hash", "--rate", "1087", "--capacity", "513",
                     "--bits", "256", str(f)]) == 1

    def test_bad_width_sum(self, tmp_path):
        f = tmp_path / "m"
        f.write_bytes(b"")
        assert main(["hash", "--rate", "512", "--capacity", "512",
                     "--bits", "256", str(f)]) == 1

    def test_width_800(self, tmp_path, capsys):
        f = tmp_path / "m"
        f.write_bytes(b"hello")
        assert main(["hash", "--rate", "544", "--capacity", "256",
                     "--bits", "128", str(f)]) == 0
        assert len(capsys.readouterr().out.strip()) == 32


class TestWrapUnwrap:
    def wrap_args(self, tmp_path, extra=()):
        return ["wrap", "--instance", "lake", "--key", KEY_HEX, "--nonce", "aa55",
                *extra, str(tmp_path / "pt"), str(tmp_path / "ct")]

    def test_round_trip(self, tmp_path, capsys):
        (tmp_path / "pt").write_bytes(b"files deserve secrecy")
        assert main(self.wrap_args(tmp_path)) == 0
        tag_hex = capsys.readouterr().out.strip()
        assert len(tag_hex) == 32
        assert (tmp_path / "ct.tag").read_text().strip() == tag_hex
        assert main(["unwrap", "--instance", "lake", "--key", KEY_HEX,
                     "--nonce", "aa55", "--tag", tag_hex,
                     str(tmp_path / "ct"), str(tmp_path / "out")]) == 0
        assert (tmp_path / "out").read_bytes() == b"files deserve secrecy"

    def test_tag_file_round_trip(self, tmp_path):
        (tmp_path / "pt").write_bytes(b"sidecar")
        assert main(self.wrap_args(tmp_path)) == 0
        assert main(["unwrap", "--instance", "lake", "--key", KEY_HEX,
                     "--nonce", "aa55", "--tag-file", str(tmp_path / "ct.tag"),
                     str(tmp_path / "ct"), str(tmp_path / "out")]) == 0
        assert (tmp_path / "out").read_bytes() == b"sidecar"

    def test_tag_append_round_trip(self, tmp_path):
        (tmp_path / "pt").write_bytes(b"inline tag")
        assert main(self.wrap_args(tmp_path, ["--tag-append"])) == 0
        ct = (tmp_path / "ct").read_bytes()
        assert len(ct) == len(b"inline tag") + 16
        assert main(["unwrap", "--instance", "lake", "--key", KEY_HEX,
                     "--nonce", "aa55", "--tag-append",
                     str(tmp_path / "ct"), str(tmp_path / "out")]) == 0
        assert (tmp_path / "out").read_bytes() == b"inline tag"

    def test_corrupted_tag_exits_2_without_output(self, tmp_path, capsys):
        (tmp_path / "pt").write_bytes(b"victim")
        assert main(self.wrap_args(tmp_path)) == 0
        tag_hex = capsys.readouterr().out.strip()
        bad = ("0" if tag_hex[0] != "0" else "1") + tag_hex[1:]
        assert main(["unwrap", "--instance", "lake", "--key", KEY_HEX,
                     "--nonce", "aa55", "--tag", bad,
                     str(tmp_path / "ct"), str(tmp_path / "out")]) == 2
        assert not (tmp_path / "out").exists()

    def test_corrupted_ciphertext_exits_2(self, tmp_path, capsys):
        (tmp_path / "pt").write_bytes(b"victim bytes")
        assert main(self.wrap_args(tmp_path)) == 0
        tag_hex = capsys.readouterr().out.strip()
        data = bytearray((tmp_path / "ct").read_bytes())
        data[0] ^= 0x80
        (tmp_path / "ct").write_bytes(bytes(data))
        assert main(["unwrap", "--instance", "lake", "--key", KEY_HEX,
                     "--nonce", "aa55", "--tag", tag_hex,
                     str(tmp_path / "ct"), str(tmp_path / "out")]) == 2
        assert not (tmp_path / "out").exists()

    def test_unknown_instance(self, tmp_path):
        (tmp_path / "pt").write_bytes(b"x")
        assert main(["wrap", "--instance", "bog", "--key", KEY_HEX, "--nonce", "00",
                     str(tmp_path / "pt"), str(tmp_path / "ct")]) == 1

    def test_missing_input_file(self, tmp_path):
        assert main(["wrap", "--instance", "lake", "--key", KEY_HEX, "--nonce", "00",
                     str(tmp_path / "absent"), str(tmp_path / "ct")]) == 1

    def test_bad_hex_key(self, tmp_path):
        (tmp_path / "pt").write_bytes(b"x")
        assert main(["wrap", "--instance", "lake", "--key", "zz", "--nonce", "00",
                     str(tmp_path / "pt"), str(tmp_path / "ct")]) == 1

    def test_forget_flag_round_trip(self, tmp_path, capsys):
        (tmp_path / "pt").write_bytes(b"forgetful")
        assert main(self.wrap_args(tmp_path, ["--forget"])) == 0
        tag_hex = capsys.readouterr().out.strip()
        assert main(["unwrap", "--instance", "lake", "--key", KEY_HEX,
                     "--nonce", "aa55", "--tag", tag_hex, "--forget",
                     str(tmp_path / "ct"), str(tmp_path / "out")]) == 0
        # flag mismatch between the sides must fail
        assert main(["unwrap", "--instance", "lake", "--key", KEY_HEX,
                     "--nonce", "aa55", "--tag", tag_hex,
                     str(tmp_path / "ct"), str(tmp_path / "out2")]) == 2

    def test_ad_file(self, tmp_path, capsys):
        (tmp_path / "pt").write_bytes(b"payload")
        (tmp_path / "ad").write_bytes(b"routing header")
        assert main(self.wrap_args(tmp_path, ["--ad", str(tmp_path / "ad")])) == 0
        tag_hex = capsys.readouterr().out.strip()
        assert main(["unwrap", "--instance", "lake", "--key", KEY_HEX,
                     "--nonce", "aa55", "--tag", tag_hex,
                     "--ad", str(tmp_path / "ad"),
                     str(tmp_path / "ct"), str(tmp_path / "out")]) == 0
        # wrong ad fails
        (tmp_path / "ad2").write_bytes(b"tampered header")
        assert main(["unwrap", "--instance", "lake", "--key", KEY_HEX,
                     "--nonce", "aa55", "--tag", tag_hex,
                     "--ad", str(tmp_path / "ad2"),
                     str(tmp_path / "ct"), str(tmp_path / "out2")]) == 2


class TestVectors:
    def test_deterministic_emission(self, tmp_path):
        for name in ("a", "b"):
            assert main(["vectors", "--instance", "river", "--count", "5",
                         "--seed", "c0ffee", "--out", str(tmp_path / name)]) == 0
        assert (tmp_path / "a").read_bytes() == (tmp_path / "b").read_bytes()

    def test_check_emitted_file(self, tmp_path):
        out = tmp_path / "v"
        assert main(["vectors", "--instance", "sea", "--count", "3",
                     "--seed", "00", "--out", str(out)]) == 0
        assert main(["vectors", "--check", str(out)]) == 0

    def test_check_detects_single_digit_change(self, tmp_path, capsys):
        out = tmp_path / "v"
        assert main(["vectors", "--instance", "lake", "--count", "2",
                     "--seed", "55", "--out", str(out)]) == 0
        text = out.read_text()
        pos = text.index("Tag: ") + 5
        flip = "0" if text[pos] != "0" else "1"
        (tmp_path / "bad").write_text(text[:pos] + flip + text[pos + 1 :])
        assert main(["vectors", "--check", str(tmp_path / "bad")]) == 2
        assert "record 1" in capsys.readouterr().err

    def test_golden_files_stable(self):
        from keyak.scheme import INSTANCES

        for name in ("river", "lake"):
            golden = open(f"tests/data/vectors_{name}_00112233.txt").read()
            records = [
                derive_vector_record(INSTANCES[name], bytes.fromhex("00112233"), i)
                for i in range(4)
            ]
            assert format_records(records) == golden

    def test_round_trip_through_text_format(self):
        records = [derive_vector_record(RIVER, b"\x01", i) for i in range(3)]
        assert parse_records(format_records(records)) == records

    def test_missing_args(self):
        assert main(["vectors", "--instance", "lake"]) == 1

    def test_check_golden_fixtures(self):
        assert main(["vectors", "--check", "tests/data/vectors_river_00112233.txt"]) == 0
        assert main(["vectors", "--check", "tests/data/vectors_lake_00112233.txt"]) == 0


class TestPerm:
    def test_zero_state_golden(self, monkeypatch, capsys):
        assert run(["perm", "--width", "1600", "--rounds", "24"],
                   stdin="00" * 200, monkeypatch=monkeypatch) == 0
        assert capsys.readouterr().out.strip() == GOLDEN_F1600

    def test_oracle_agrees_with_lane(self, monkeypatch, capsys):
        state_hex = "0123456789abcdef" * 25
        assert run(["perm", "--width", "1600", "--rounds", "12"],
                   stdin=state_hex, monkeypatch=monkeypatch) == 0
        lane = capsys.readouterr().out
        assert run(["perm", "--width", "1600", "--rounds", "12", "--oracle"],
                   stdin=state_hex, monkeypatch=monkeypatch) == 0
        assert capsys.readouterr().out == lane

    def test_zero_rounds_usage_error(self, monkeypatch):
        assert run(["perm", "--width", "1600", "--rounds", "0"],
                   stdin="00" * 200, monkeypatch=monkeypatch) == 1

    def test_wrong_state_length(self, monkeypatch):
        assert run(["perm", "--width", "1600", "--rounds", "24"],
                   stdin="00" * 100, monkeypatch=monkeypatch) == 1

    def test_sub_byte_width_rejected(self, monkeypatch):
        assert run(["perm", "--width", "25", "--rounds", "12"],
                   stdin="00", monkeypatch=monkeypatch) == 1

    def test_trace_ends_with_result(self, monkeypatch, capsys):
        assert run(["perm", "--width", "800", "--rounds", "2", "--trace"],
                   stdin="00" * 100, monkeypatch=monkeypatch) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 2 * 5 + 1  # five steps per round plus the result
        assert lines[0].startswith("round 20 theta:")
        assert run(["perm", "--width", "800", "--rounds", "2"],
                   stdin="00" * 100, monkeypatch=monkeypatch) == 0
        assert lines[-1] == capsys.readouterr().out.strip()


class TestUsage:
    def test_no_command(self):
        assert main([]) == 1

    def test_unknown_command(self):
        assert main(["destroy"]) == 1

    def test_help_exits_zero(self):
        assert main(["--help"]) == 0
