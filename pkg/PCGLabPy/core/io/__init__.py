from .recording import PcgRecording, load_wav, write_wav
from .manifest import Manifest
from .artifact import write_artifact, read_artifact, write_json, read_json
