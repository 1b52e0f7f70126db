"""WAV reading and writing."""

import numpy as np
import pytest
from scipy.io import wavfile

from audioaug import AudioSignal, read_wav, write_wav


class TestRoundtrip:
    def test_float32_roundtrip(self, tmp_path):
        rng = np.random.default_rng(0)
        sig = AudioSignal(rng.uniform(-1, 1, 4000), 16000)
        path = tmp_path / "x.wav"
        write_wav(sig, path)
        back = read_wav(path)
        assert back.sample_rate == 16000
        np.testing.assert_allclose(back.samples, sig.samples, atol=1e-7)

    def test_write_then_write_identical_bytes(self, tmp_path):
        sig = AudioSignal(np.linspace(-0.5, 0.5, 1000), 8000)
        p1, p2 = tmp_path / "a.wav", tmp_path / "b.wav"
        write_wav(sig, p1)
        write_wav(sig, p2)
        assert p1.read_bytes() == p2.read_bytes()


class TestReading:
    def test_pcm16_scaling(self, tmp_path):
        path = tmp_path / "pcm.wav"
        wavfile.write(path, 8000, np.array([0, 16384, -32768], dtype=np.int16))
        sig = read_wav(path)
        np.testing.assert_allclose(sig.samples, [0.0, 0.5, -1.0])

    def test_stereo_averaged_to_mono(self, tmp_path):
        path = tmp_path / "st.wav"
        stereo = np.array([[0.2, 0.4], [-0.6, 0.0]], dtype=np.float32)
        wavfile.write(path, 8000, stereo)
        sig = read_wav(path)
        np.testing.assert_allclose(sig.samples, [0.3, -0.3], atol=1e-7)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            read_wav(tmp_path / "nope.wav")

    def test_garbage_rejected(self, tmp_path):
        path = tmp_path / "bad.wav"
        path.write_bytes(b"not a riff file at all")
        with pytest.raises(ValueError):
            read_wav(path)

    def test_empty_audio_rejected(self, tmp_path):
        path = tmp_path / "empty.wav"
        wavfile.write(path, 8000, np.array([], dtype=np.float32))
        with pytest.raises(ValueError):
            read_wav(path)


class TestWriting:
    def test_empty_signal_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            write_wav(AudioSignal(np.array([]), 8000), tmp_path / "e.wav")
