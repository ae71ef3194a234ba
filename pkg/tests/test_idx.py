"""IDX format parsing against hand-built byte fixtures."""

import struct

import numpy as np
import pytest

from uulearn import read_idx, read_idx_raw, write_idx
from uulearn.errors import IdxFormatError


def build_idx(dims, payload: bytes, type_code=0x08, magic=(0, 0)) -> bytes:
    header = bytes([magic[0], magic[1], type_code, len(dims)])
    for size in dims:
        header += struct.pack(">I", size)
    return header + payload


class TestParsing:
    def test_hand_built_fixture(self, tmp_path):
        payload = bytes([0, 255, 128, 0, 255, 0, 0, 128])
        path = tmp_path / "imgs.idx"
        path.write_bytes(build_idx((2, 2, 2), payload))
        dims, values = read_idx(path)
        assert dims == (2, 2, 2)
        np.testing.assert_allclose(
            values,
            [0.0, 1.0, 128 / 255, 0.0, 1.0, 0.0, 0.0, 128 / 255],
            atol=0,
        )

    def test_zero_item_file(self, tmp_path):
        path = tmp_path / "empty.idx"
        path.write_bytes(build_idx((0,), b""))
        dims, values = read_idx(path)
        assert dims == (0,)
        assert values.size == 0

    def test_raw_reader_unscaled(self, tmp_path):
        path = tmp_path / "labels.idx"
        path.write_bytes(build_idx((4,), bytes([3, 7, 0, 9])))
        dims, raw = read_idx_raw(path)
        assert dims == (4,)
        np.testing.assert_array_equal(raw, [3, 7, 0, 9])
        assert raw.dtype == np.uint8


class TestFormatErrors:
    def test_bad_magic_at_offset_zero(self, tmp_path):
        path = tmp_path / "bad.idx"
        path.write_bytes(bytes([0xDE, 0xAD, 0xBE, 0xEF]) + bytes(8))
        with pytest.raises(IdxFormatError) as err:
            read_idx(path)
        assert err.value.offset == 0

    def test_unsupported_type_code_at_offset_two(self, tmp_path):
        path = tmp_path / "f32.idx"
        path.write_bytes(build_idx((2,), bytes(8), type_code=0x0D))
        with pytest.raises(IdxFormatError) as err:
            read_idx(path)
        assert err.value.offset == 2

    def test_truncated_payload_at_payload_offset(self, tmp_path):
        path = tmp_path / "short.idx"
        path.write_bytes(build_idx((2, 3), bytes(4)))  # needs 6 bytes
        with pytest.raises(IdxFormatError) as err:
            read_idx(path)
        assert err.value.offset == 4 + 4 * 2

    def test_trailing_bytes_rejected(self, tmp_path):
        path = tmp_path / "long.idx"
        path.write_bytes(build_idx((2,), bytes(5)))
        with pytest.raises(IdxFormatError):
            read_idx(path)

    def test_truncated_header(self, tmp_path):
        path = tmp_path / "tiny.idx"
        path.write_bytes(bytes([0, 0, 8, 2, 0, 0]))
        with pytest.raises(IdxFormatError):
            read_idx(path)


class TestRoundTrip:
    def test_write_then_read_reproduces_bytes(self, tmp_path):
        rng = np.random.default_rng(21)
        tensor = rng.integers(0, 256, size=(5, 4, 3), dtype=np.uint8)
        path = tmp_path / "tensor.idx"
        write_idx(path, tensor)
        dims, raw = read_idx_raw(path)
        assert dims == (5, 4, 3)
        np.testing.assert_array_equal(raw.reshape(dims), tensor)
        # a second write of the parsed content is byte-identical
        path2 = tmp_path / "tensor2.idx"
        write_idx(path2, raw.reshape(dims))
        assert path.read_bytes() == path2.read_bytes()

    def test_scaled_values_match_bytes(self, tmp_path):
        tensor = np.array([[0, 51, 255]], dtype=np.uint8)
        path = tmp_path / "row.idx"
        write_idx(path, tensor)
        _, values = read_idx(path)
        np.testing.assert_array_equal(values, tensor.ravel() / 255.0)
