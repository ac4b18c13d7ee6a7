import numpy as np
from scipy.special import log_softmax

from domain.InstanceMap import InstanceMap
from domain.LossWeights import LossWeights
from domain.SemanticMap import SemanticMap
from domain.errors import LabelOutOfRange, ShapeMismatch


def remap_instances(inst: InstanceMap) -> tuple[InstanceMap, dict[int, int]]:
    """Dense 1-based channels: background is channel 1 and raw ids map in ascending order to 2..K."""
    instance_ids = np.unique(inst.ids[inst.ids > 0])
    remapped = np.ones(inst.shape, dtype=np.int64)
    foreground = inst.ids > 0
    remapped[foreground] = np.searchsorted(instance_ids, inst.ids[foreground]) + 2
    mapping = {int(raw_id): channel + 2 for channel, raw_id in enumerate(instance_ids)}
    return InstanceMap(remapped), mapping


def cross_entropy(logits: np.ndarray, labels: np.ndarray, head: str) -> float:
    logits = np.asarray(logits, dtype=float)
    if logits.ndim != 3 or logits.shape[:2] != labels.shape:
        raise ShapeMismatch(f"{head} logits {logits.shape} do not match labels {labels.shape}")
    channels = logits.shape[2]
    if labels.size and (labels.min() < 1 or labels.max() > channels):
        raise LabelOutOfRange(f"{head} labels must lie in [1, {channels}]")

    log_probabilities = log_softmax(logits, axis=2)
    picked = np.take_along_axis(log_probabilities, (labels - 1)[..., None].astype(np.intp), axis=2)
    return float(-picked.mean())


def multitask_loss(
    sem_logits: np.ndarray,
    sem_labels: SemanticMap,
    inst_logits: np.ndarray,
    inst_labels: InstanceMap,
    w: LossWeights = LossWeights(),
) -> float:
    """alpha·L_S + beta·L_O with mean per-pixel softmax cross entropy; instance labels are already remapped."""
    semantic = cross_entropy(sem_logits, sem_labels.classes, "Semantic")
    instance = cross_entropy(inst_logits, inst_labels.ids, "Instance")
    return w.alpha * semantic + w.beta * instance
