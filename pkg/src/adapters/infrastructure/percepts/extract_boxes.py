import numpy as np
from scipy.ndimage import find_objects, label

from domain.BoundingBox2D import BoundingBox2D
from domain.InstanceMap import InstanceMap
from domain.SemanticMap import SemanticMap
from domain.errors import DimensionMismatch

MIN_AREA = 20


def extract_boxes(inst: InstanceMap, sem: SemanticMap, min_area: int = MIN_AREA) -> list[BoundingBox2D]:
    """One box per 4-connected component of every instance id, labelled with the component's majority class."""
    if inst.shape != sem.shape:
        raise DimensionMismatch(f"Instance map {inst.shape} and semantic map {sem.shape} differ")

    # Ids compacted to 1..n for find_objects.
    instance_ids = np.unique(inst.ids[inst.ids != 0])
    compact = np.where(inst.ids != 0, np.searchsorted(instance_ids, inst.ids) + 1, 0)

    boxes = []
    for instance_index, instance_slice in enumerate(find_objects(compact)):
        if instance_slice is None:
            continue
        instance_id = int(instance_ids[instance_index])
        rows, cols = instance_slice
        components, _ = label(compact[instance_slice] == instance_index + 1)
        classes = sem.classes[instance_slice]

        for component_index, component_slice in enumerate(find_objects(components)):
            component_mask = components[component_slice] == component_index + 1
            if component_mask.sum() < min_area:
                continue
            component_classes = classes[component_slice][component_mask]
            majority_class = int(np.bincount(component_classes).argmax())
            component_rows, component_cols = component_slice
            boxes.append(
                BoundingBox2D(
                    x1=cols.start + component_cols.start,
                    y1=rows.start + component_rows.start,
                    x2=cols.start + component_cols.stop - 1,
                    y2=rows.start + component_rows.stop - 1,
                    c=majority_class,
                    instance_id=instance_id,
                )
            )

    return sorted(boxes, key=lambda box: (box.instance_id, box.y1, box.x1))
