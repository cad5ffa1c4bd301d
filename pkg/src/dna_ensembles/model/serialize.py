__docformat__ = "google"

from ..container import read_container, write_container
from .arch import ArchConfig, ClassifierParams

PARAMS_KIND = "classifier-params"


def save_params(params: ClassifierParams, path, model_id=""):
    write_container(
        path,
        PARAMS_KIND,
        {"arch": params.arch.to_dict(), "model_id": model_id},
        params.weights,
    )


def load_params(path) -> ClassifierParams:
    meta, arrays = read_container(path, PARAMS_KIND)
    return ClassifierParams(ArchConfig.from_value(meta["arch"]), arrays)
