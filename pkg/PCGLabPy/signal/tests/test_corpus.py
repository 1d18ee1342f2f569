import os
import numpy as np
import pytest
from PCGLabPy.core.errors import TooShort
from PCGLabPy.core.io import PcgRecording, Manifest, write_wav
from PCGLabPy.signal.corpus import (
    prepare_recording, prepare_corpus, output_stem
)


def write_manifest(directory, durations, rate=4000, paths=None):
    records = []
    for i, duration in enumerate(durations):
        path = paths[i] if paths else "raw/r{}.wav".format(i)
        samples = 0.1 * np.sin(np.arange(int(duration * rate)) / 10)
        write_wav(PcgRecording(samples, rate), os.path.join(directory, path))
        records.append(dict(path=path, quality_score=4,
                            outcome_label='normal', sex='female'))
    return Manifest.from_records(records, base_dir=directory)


def test_prepare_recording():
    recording = PcgRecording(np.zeros(4000), 4000, 'a')
    out, = prepare_recording(recording, target_rate_hz=1000, min_seconds=3)
    assert out.sample_rate_hz == 1000
    assert out.duration == pytest.approx(3.0)
    parts = prepare_recording(recording, chunk_seconds=0.25)
    assert [p.source_id for p in parts] == ['a_0000', 'a_0001', 'a_0002',
                                            'a_0003']
    assert prepare_recording(recording) == [recording]


def test_prepare_corpus_resample(tmp_path):
    manifest = write_manifest(str(tmp_path), [1.0, 2.0])
    out_dir = str(tmp_path / "prepared")
    prepared = prepare_corpus(manifest, out_dir, target_rate_hz=1000,
                              min_seconds=1.5)
    assert prepared.paths == ['recordings/00000_r0.wav',
                              'recordings/00001_r1.wav']
    assert not prepared.has_subject_id
    reread = Manifest.read(os.path.join(out_dir, "manifest.csv"))
    assert reread.paths == prepared.paths
    assert list(reread.df['sex']) == ['female', 'female']
    first = reread.load(0)
    assert first.sample_rate_hz == 1000
    assert first.duration == pytest.approx(2.0)
    assert reread.load(1).duration == pytest.approx(2.0)


def test_prepare_corpus_chunks(tmp_path):
    manifest = write_manifest(str(tmp_path), [2.5, 0.5])
    out_dir = str(tmp_path / "chunked")
    prepared = prepare_corpus(manifest, out_dir, chunk_seconds=1.0)
    assert prepared.paths == ['recordings/00000_r0_0000.wav',
                              'recordings/00000_r0_0001.wav']
    assert list(prepared.df['subject_id']) == ['raw/r0.wav', 'raw/r0.wav']
    assert list(prepared.df['quality_score']) == [4, 4]

    with pytest.raises(TooShort):
        prepare_corpus(manifest, str(tmp_path / "empty"), chunk_seconds=5.0)


def test_output_stem():
    assert output_stem(0, "a/rec1.wav") == "00000_rec1"
    assert output_stem(12, "rec1.WAV") == "00012_rec1"


def test_prepare_corpus_same_names(tmp_path):
    manifest = write_manifest(str(tmp_path), [1.0, 2.0],
                              paths=["a/rec1.wav", "b/rec1.wav"])
    out_dir = str(tmp_path / "prepared")
    prepared = prepare_corpus(manifest, out_dir)
    assert prepared.paths == ['recordings/00000_rec1.wav',
                              'recordings/00001_rec1.wav']
    assert len(os.listdir(os.path.join(out_dir, "recordings"))) == 2
    assert prepared.load(0).duration == pytest.approx(1.0)
    assert prepared.load(1).duration == pytest.approx(2.0)
