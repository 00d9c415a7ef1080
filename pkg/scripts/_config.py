"""Command-line overrides for dataclass experiment configs."""

from __future__ import annotations

import argparse
import dataclasses
import typing


def parse_config(cls, argv=None):
    """Build ``cls`` from its defaults, overridden by ``--field value`` flags.

    Tuple fields take comma separated values.
    """
    hints = typing.get_type_hints(cls)
    parser = argparse.ArgumentParser(description=(cls.__doc__ or "").strip().splitlines()[0])
    for f in dataclasses.fields(cls):
        default = f.default if f.default is not dataclasses.MISSING else f.default_factory()
        kind = hints[f.name]
        flag = "--" + f.name.replace("_", "-")
        if typing.get_origin(kind) is tuple:
            inner = typing.get_args(kind)[0]
            parser.add_argument(flag, default=default, type=lambda s, t=inner: tuple(t(x) for x in s.split(",") if x))
        elif kind is bool:
            parser.add_argument(flag, default=default, action=argparse.BooleanOptionalAction)
        else:
            parser.add_argument(flag, default=default, type=kind)
    return cls(**vars(parser.parse_args(argv)))
