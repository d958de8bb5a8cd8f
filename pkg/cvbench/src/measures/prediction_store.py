from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..io_utils import ResponseKind
from ..utils.errors import ArgumentError, PredictionImportError

StoreKey = Tuple[int, str, str]
Combo = Tuple[str, str]


def combo_label(combo: Combo) -> str:
    """Display label of a (descriptor set, method) pair, e.g. 'Burden-RF'."""
    return f"{combo[0]}-{combo[1]}"


class PredictionStore:
    """
    Out-of-fold predictions keyed by (split, descriptor set, method).

    Every entry holds one finite prediction per observation, aligned to
    the dataset row order. Combos are kept in the order they were first
    added, which is the grid order for fitted runs with imported combos
    appended.
    """

    def __init__(self, ids: Sequence[str], response: np.ndarray, kind: ResponseKind):
        self.ids = tuple(ids)
        self.response = np.asarray(response, dtype=float)
        self.kind = kind
        self._entries: Dict[StoreKey, np.ndarray] = {}
        # unclamped values for entries whose predictions were clamped
        self._raw: Dict[StoreKey, np.ndarray] = {}
        self._combos: List[Combo] = []

    @property
    def n(self) -> int:
        return len(self.ids)

    def add(self, split: int, set_name: str, method: str, values) -> None:
        values = np.asarray(values, dtype=float)
        key = (int(split), set_name, method)
        context = {"module": "measures", "operation": "PredictionStore.add",
                   "cell": combo_label((set_name, method)), "split": int(split)}
        if values.shape != (self.n,):
            raise ArgumentError(f"Entry {key} has {values.size} predictions, expected {self.n}",
                                context)
        if not np.all(np.isfinite(values)):
            raise ArgumentError(f"Entry {key} contains non-finite predictions", context)
        if key in self._entries:
            raise ArgumentError(f"Entry {key} already present", context)
        values = values.copy()
        values.setflags(write=False)
        self._entries[key] = values
        if (set_name, method) not in self._combos:
            self._combos.append((set_name, method))

    def get(self, split: int, set_name: str, method: str) -> np.ndarray:
        key = (int(split), set_name, method)
        if key not in self._entries:
            raise ArgumentError(f"No predictions for {key}",
                                {"module": "measures", "operation": "PredictionStore.get"})
        return self._entries[key]

    def set_raw(self, split: int, set_name: str, method: str, values) -> None:
        """Keep the unclamped predictions behind an existing entry."""
        key = (int(split), set_name, method)
        values = np.asarray(values, dtype=float)
        context = {"module": "measures", "operation": "PredictionStore.set_raw",
                   "cell": combo_label((set_name, method)), "split": int(split)}
        if key not in self._entries:
            raise ArgumentError(f"No predictions for {key}", context)
        if values.shape != (self.n,) or not np.all(np.isfinite(values)):
            raise ArgumentError(f"Raw values for {key} must be {self.n} finite numbers", context)
        values = values.copy()
        values.setflags(write=False)
        self._raw[key] = values

    def get_raw(self, split: int, set_name: str, method: str) -> np.ndarray:
        """Unclamped predictions; the stored predictions when nothing was clamped."""
        key = (int(split), set_name, method)
        return self._raw.get(key, self.get(*key))

    def raw_frame(self) -> pd.DataFrame:
        """Long format of the entries holding unclamped values."""
        frames = [
            pd.DataFrame({"split": key[0], "descriptor_set": key[1], "method": key[2],
                          "id": list(self.ids), "raw_prediction": self._raw[key]})
            for key in self.keys() if key in self._raw
        ]
        if not frames:
            return pd.DataFrame(columns=["split", "descriptor_set", "method", "id",
                                         "raw_prediction"])
        return pd.concat(frames, ignore_index=True)

    def merge_raw_frame(self, frame: pd.DataFrame) -> None:
        """Attach unclamped values read back from ``raw_frame`` output."""
        frame = frame.copy()
        frame["id"] = frame["id"].astype(str).str.strip()
        for (split, set_name, method), group in frame.groupby(
                ["split", "descriptor_set", "method"], sort=False):
            values = group.set_index("id")["raw_prediction"].reindex(list(self.ids))
            self.set_raw(int(split), str(set_name), str(method),
                         values.to_numpy(dtype=float))

    def __contains__(self, key) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def keys(self) -> Iterator[StoreKey]:
        for split in self.splits:
            for set_name, method in self._combos:
                if (split, set_name, method) in self._entries:
                    yield split, set_name, method

    @property
    def splits(self) -> List[int]:
        return sorted({key[0] for key in self._entries})

    @property
    def combos(self) -> List[Combo]:
        return list(self._combos)

    @property
    def set_names(self) -> List[str]:
        return list(dict.fromkeys(s for s, _ in self._combos))

    @property
    def methods(self) -> List[str]:
        return list(dict.fromkeys(m for _, m in self._combos))

    def to_frame(self) -> pd.DataFrame:
        """Long format: split, descriptor_set, method, id, prediction."""
        frames = [
            pd.DataFrame({"split": split, "descriptor_set": set_name, "method": method,
                          "id": list(self.ids), "prediction": self._entries[(split, set_name, method)]})
            for split, set_name, method in self.keys()
        ]
        if not frames:
            return pd.DataFrame(columns=["split", "descriptor_set", "method", "id", "prediction"])
        return pd.concat(frames, ignore_index=True)

    def merge_frame(self, frame: pd.DataFrame, source: Optional[str] = None) -> List[StoreKey]:
        """
        Add every (split, descriptor_set, method) group of a long-format
        frame. Each group must cover every id exactly once.

        Returns:
            list: Keys that were added
        """
        required = ["split", "descriptor_set", "method", "id", "prediction"]
        missing = [c for c in required if c not in frame.columns]
        context = {"module": "orchestrator", "operation": "import_predictions"}
        if source:
            context["source"] = str(source)
        if missing:
            raise PredictionImportError(f"Prediction file lacks columns {missing}", context)

        frame = frame.copy()
        frame["id"] = frame["id"].astype(str).str.strip()
        frame["descriptor_set"] = frame["descriptor_set"].astype(str)
        frame["method"] = frame["method"].astype(str)
        try:
            frame["split"] = frame["split"].astype(int)
            frame["prediction"] = frame["prediction"].astype(float)
        except (TypeError, ValueError) as e:
            raise PredictionImportError(f"Non-numeric split or prediction value: {e}", context) from e

        known = set(self.ids)
        unknown = sorted(set(frame["id"]) - known)
        if unknown:
            raise PredictionImportError(f"Ids not in the dataset: {unknown[:10]}",
                                        {**context, "ids": unknown[:10]})

        problems = []
        groups = []
        for (split, set_name, method), group in frame.groupby(
                ["split", "descriptor_set", "method"], sort=False):
            key = (int(split), set_name, method)
            present = set(group["id"])
            duplicated = sorted(set(group.loc[group["id"].duplicated(), "id"]))
            absent = [i for i in self.ids if i not in present]
            if duplicated:
                problems.append(f"(split {split}, {combo_label((set_name, method))}) "
                                f"duplicate ids {duplicated[:10]}")
            if absent:
                problems.append(f"(split {split}, {combo_label((set_name, method))}) "
                                f"missing ids {absent[:10]}")
            if key in self._entries:
                problems.append(f"(split {split}, {combo_label((set_name, method))}) already present")
            if not np.all(np.isfinite(group["prediction"].to_numpy())):
                problems.append(f"(split {split}, {combo_label((set_name, method))}) "
                                f"non-finite predictions")
            groups.append((key, group))
        if problems:
            raise PredictionImportError("Prediction import failed: " + "; ".join(problems),
                                        {**context, "problems": problems})

        added = []
        for key, group in groups:
            values = group.set_index("id")["prediction"].reindex(list(self.ids)).to_numpy()
            self.add(*key, values)
            added.append(key)
        return added
