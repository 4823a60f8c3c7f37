"""Versioned parameter checkpoints.

Stored as .npz so the float64 weight values round-trip bit-exactly. Each
file carries the masks, weights, biases, the trial seed, and an echo of
the experiment configuration for provenance.
"""

import json

import numpy as np

from .model import DbmParams

FORMAT_VERSION = 1


def save_checkpoint(path, params, seed, config_echo=None):
    np.savez(
        path,
        format_version=np.int64(FORMAT_VERSION),
        w1=params.w1, w2=params.w2,
        b=params.b, c1=params.c1, c2=params.c2,
        mask1=params.mask1, mask2=params.mask2,
        seed=np.int64(seed),
        config_json=np.str_(json.dumps(config_echo or {}, sort_keys=True)),
    )


def load_checkpoint(path):
    """Returns (params, seed, config_echo)."""
    with np.load(path, allow_pickle=False) as data:
        version = int(data["format_version"])
        if version != FORMAT_VERSION:
            raise ValueError(
                f"unsupported checkpoint version {version} (expected {FORMAT_VERSION})"
            )
        params = DbmParams(
            w1=data["w1"], w2=data["w2"],
            b=data["b"], c1=data["c1"], c2=data["c2"],
            mask1=data["mask1"], mask2=data["mask2"],
        )
        seed = int(data["seed"])
        config_echo = json.loads(str(data["config_json"]))
    return params, seed, config_echo
