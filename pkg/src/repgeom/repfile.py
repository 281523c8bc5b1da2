"""Load and save representation files.

A file is YAML (JSON is accepted too, being a subset)::

    p: 3
    group_dim: 1
    action_dim: 1
    generators:
      - {group: [[2]], action: [[2]]}

Entries are reduced mod p on load. ``group_dim`` and ``action_dim`` may be
omitted when there is at least one generator.
"""

import json

import yaml

from .errors import InvalidRepresentation
from .representation import DEFAULT_GROUP_BOUND, generate


def rep_from_data(data, bound=DEFAULT_GROUP_BOUND):
    if not isinstance(data, dict) or "p" not in data:
        raise InvalidRepresentation("representation data needs a 'p' field")
    p = int(data["p"])
    gens = data.get("generators") or []
    try:
        group = [g["group"] for g in gens]
        action = [g["action"] for g in gens]
    except (KeyError, TypeError):
        raise InvalidRepresentation("each generator needs 'group' and 'action' matrices") from None
    group_dim = data.get("group_dim")
    action_dim = data.get("action_dim")
    if not gens and group_dim is None:
        group_dim = 1
    if not gens and action_dim is None:
        action_dim = 0
    return generate(p, group, action, bound=bound, group_dim=group_dim, action_dim=action_dim)


def load_rep(path, bound=DEFAULT_GROUP_BOUND):
    with open(path, encoding="utf-8") as fh:
        try:
            data = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise InvalidRepresentation(f"{path}: {exc}") from None
    return rep_from_data(data, bound=bound)


def rep_to_data(rep):
    return {
        "p": rep.p,
        "group_dim": rep.group_dim,
        "action_dim": rep.action_dim,
        "generators": [
            {"group": [list(r) for r in g], "action": [list(r) for r in a]}
            for g, a in rep.generator_pairs()
        ],
    }


def dump_rep(rep, fmt="yaml"):
    data = rep_to_data(rep)
    if fmt == "json":
        return json.dumps(data, sort_keys=True)
    return yaml.safe_dump(data, sort_keys=False, default_flow_style=None)
