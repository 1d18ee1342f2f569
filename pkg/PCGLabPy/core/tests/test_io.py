import os
import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose
from scipy.io import wavfile
from PCGLabPy.core.errors import (
    UnsupportedFormat, CorruptHeader, EmptyAudio, MissingColumn, BadScore,
    BadLabel, DuplicatePath
)
from PCGLabPy.core.io import (
    PcgRecording, load_wav, write_wav, Manifest, write_artifact,
    read_artifact
)

HEADER = ("path,quality_score,outcome_label,sex,age_group,height_cm,"
          "weight_kg,pregnant,split_tag\n")


def test_load_int16_scaling(tmp_path):
    path = str(tmp_path / "scale.wav")
    wavfile.write(path, 1000, np.array([0, -32768, 16384], dtype=np.int16))
    recording = load_wav(path)
    assert_allclose(recording.samples, [0.0, -1.0, 0.5])
    assert recording.sample_rate_hz == 1000
    assert recording.source_id == path


def test_round_trip_int16(tmp_path):
    path = str(tmp_path / "round.wav")
    samples = np.random.RandomState(0).uniform(-0.9, 0.9, 100)
    write_wav(PcgRecording(samples, 1000, 'x'), path)
    loaded = load_wav(path, source_id='x', subject_id='s1')
    assert loaded.sample_rate_hz == 1000
    assert loaded.subject_id == 's1'
    assert np.abs(loaded.samples - samples).max() <= 1 / 32768


def test_round_trip_float32(tmp_path):
    path = str(tmp_path / "float.wav")
    samples = np.random.RandomState(1).uniform(-1, 1, 50)
    write_wav(PcgRecording(samples, 4000), path, subtype='float32')
    loaded = load_wav(path)
    assert_allclose(loaded.samples, samples.astype(np.float32))
    with pytest.raises(UnsupportedFormat):
        write_wav(PcgRecording(samples, 4000), path, subtype='mp3')


def test_load_errors(tmp_path):
    stereo = str(tmp_path / "stereo.wav")
    wavfile.write(stereo, 1000, np.zeros((10, 2), dtype=np.int16))
    with pytest.raises(UnsupportedFormat):
        load_wav(stereo)

    int32 = str(tmp_path / "int32.wav")
    wavfile.write(int32, 1000, np.zeros(10, dtype=np.int32))
    with pytest.raises(UnsupportedFormat):
        load_wav(int32)

    garbage = str(tmp_path / "garbage.wav")
    with open(garbage, 'wb') as f:
        f.write(b"not a wav file at all")
    with pytest.raises(CorruptHeader):
        load_wav(garbage)

    empty = str(tmp_path / "empty.wav")
    wavfile.write(empty, 1000, np.zeros(0, dtype=np.int16))
    with pytest.raises(EmptyAudio):
        load_wav(empty)

    with pytest.raises(FileNotFoundError):
        load_wav(str(tmp_path / "missing.wav"))


def test_recording():
    recording = PcgRecording([0.1, 0.2, 0.3, 0.4], 2)
    assert len(recording) == 4
    assert recording.duration == 2.0
    with pytest.raises(ValueError):
        recording.samples[0] = 1
    with pytest.raises(EmptyAudio):
        PcgRecording([], 1000)
    with pytest.raises(ValueError):
        PcgRecording([np.nan], 1000)
    with pytest.raises(ValueError):
        PcgRecording([0.0], 0)


def write_csv(tmp_path, rows, header=HEADER):
    path = str(tmp_path / "manifest.csv")
    with open(path, 'w') as f:
        f.write(header + "".join(row + "\n" for row in rows))
    return path


def test_read_manifest(tmp_path):
    path = write_csv(tmp_path, [
        "a.wav,4,normal,F,child,130.0,30.0,false,",
        "b.wav,,,,,,,,train",
    ])
    manifest = Manifest.read(path)
    assert len(manifest) == 2
    a, b = list(manifest)
    assert a['quality_score'] == 4
    assert a['outcome_label'] == 'normal'
    assert a['sex'] == 'female'
    assert a['height_cm'] == 130.0
    assert a['pregnant'] is False
    assert a['split_tag'] is None
    assert b['quality_score'] is None
    assert b['split_tag'] == 'train'
    assert manifest.has_demographics
    assert not manifest.has_subject_id
    assert manifest.resolve('a.wav') == os.path.join(str(tmp_path), 'a.wav')


def test_manifest_errors(tmp_path):
    with pytest.raises(DuplicatePath):
        Manifest.read(write_csv(tmp_path, ["a.wav,4,,,,,,,",
                                           "a.wav,3,,,,,,,"]))
    with pytest.raises(BadScore):
        Manifest.read(write_csv(tmp_path, ["a.wav,6,,,,,,,"]))
    with pytest.raises(BadScore):
        Manifest.read(write_csv(tmp_path, ["a.wav,2.5,,,,,,,"]))
    for score in ("inf", "-inf", "nan"):
        row = "a.wav,{},,,,,,,".format(score)
        with pytest.raises(BadScore):
            Manifest.read(write_csv(tmp_path, [row]))
    with pytest.raises(BadLabel):
        Manifest.read(write_csv(tmp_path, ["a.wav,4,sick,,,,,,"]))
    with pytest.raises(BadLabel):
        Manifest.read(write_csv(tmp_path, ["a.wav,4,,,,-3,,,"]))
    with pytest.raises(MissingColumn):
        Manifest.read(write_csv(tmp_path, ["a.wav,4"],
                                header="path,quality_score\n"))
    with pytest.raises(FileNotFoundError):
        Manifest.read(str(tmp_path / "missing.csv"))


def test_manifest_write(tmp_path):
    rows = [
        "a.wav,4,normal,F,child,130.0,30.0,false,",
        "b.wav,,abnormal,M,infant,,,,test",
    ]
    manifest = Manifest.read(write_csv(tmp_path, rows))
    out = str(tmp_path / "out" / "manifest.csv")
    manifest.write(out)
    with open(out) as f:
        assert f.read() == HEADER + "".join(r + "\n" for r in rows)


def test_manifest_subject_id(tmp_path):
    path = write_csv(tmp_path, ["a.wav,4,,,,,,,,p1", "b.wav,3,,,,,,,,"],
                     header=HEADER.rstrip("\n") + ",subject_id\n")
    manifest = Manifest.read(path)
    assert manifest.has_subject_id
    assert list(manifest.df['subject_id']) == ['p1', None]
    assert not manifest.has_demographics


def test_manifest_subset(tmp_path):
    manifest = Manifest.from_records(
        [dict(path="{}.wav".format(i), quality_score=1 + i % 5)
         for i in range(6)],
        base_dir=str(tmp_path),
    )
    subset = manifest.subset(np.array([0, 2, 4]))
    assert subset.paths == ['0.wav', '2.wav', '4.wav']
    assert subset.base_dir == manifest.base_dir
    masked = manifest.subset(np.arange(6) < 2)
    assert masked.paths == ['0.wav', '1.wav']

    rebased = manifest.rebase(str(tmp_path / "gated"))
    assert rebased.paths[0] == '../0.wav'
    assert rebased.resolve(rebased.paths[0]) == os.path.join(
        str(tmp_path / "gated"), '../0.wav'
    )


def test_manifest_load(tmp_path):
    write_wav(PcgRecording(np.zeros(100), 1000), str(tmp_path / "a.wav"))
    manifest = Manifest.from_records(
        [dict(path='a.wav', subject_id='p9')], base_dir=str(tmp_path)
    )
    recording = manifest.load(0)
    assert recording.source_id == 'a.wav'
    assert recording.subject_id == 'p9'
    assert len(recording) == 100


def test_artifact(tmp_path):
    directory = str(tmp_path / "artifact")
    blob = np.array([0.5, -1.25, 3.0])
    write_artifact(directory, 'test', dict(b=np.int64(2), a=[1.0]), blob)
    index, loaded = read_artifact(directory, 'test')
    assert index['a'] == [1.0]
    assert index['b'] == 2
    assert index['blob']['n_values'] == 3
    assert_allclose(loaded, blob)
    with open(os.path.join(directory, "manifest.json")) as f:
        text = f.read()
    assert text.index('"a"') < text.index('"b"')
    with pytest.raises(ValueError):
        read_artifact(directory, 'encoder')


def test_manifest_from_dataframe():
    df = pd.DataFrame(dict(path=['x.wav'], quality_score=['5']))
    with pytest.raises(MissingColumn):
        Manifest(df)
