import math
from unittest import TestCase

import numpy as np

from adapters.infrastructure.percepts.average_precision import average_precision, average_precision_over_frames
from adapters.infrastructure.percepts.extract_boxes import extract_boxes
from adapters.infrastructure.percepts.multitask_loss import multitask_loss, remap_instances
from adapters.infrastructure.percepts.segmentation_metrics import mean_iou, overall_accuracy
from domain.BoundingBox2D import BoundingBox2D
from domain.InstanceMap import InstanceMap
from domain.LossWeights import LossWeights
from domain.SegmentationConfig import DEFAULT_IOU_THRESHOLDS
from domain.SemanticMap import SemanticMap
from domain.errors import DimensionMismatch, LabelOutOfRange, ShapeMismatch


def flood_components(mask: np.ndarray) -> list[set[tuple[int, int]]]:
    unvisited = {(int(y), int(x)) for y, x in zip(*np.nonzero(mask))}
    components = []
    while unvisited:
        stack = [unvisited.pop()]
        component = set(stack)
        while stack:
            y, x = stack.pop()
            for neighbour in ((y + 1, x), (y - 1, x), (y, x + 1), (y, x - 1)):
                if neighbour in unvisited:
                    unvisited.remove(neighbour)
                    component.add(neighbour)
                    stack.append(neighbour)
        components.append(component)
    return components


def box(x1, y1, x2, y2, c) -> BoundingBox2D:
    return BoundingBox2D(x1=x1, y1=y1, x2=x2, y2=y2, c=c)


def random_box(rng: np.random.Generator, size: int) -> BoundingBox2D:
    x1, y1 = (int(v) for v in rng.integers(0, size, 2))
    x2, y2 = int(rng.integers(x1, size)), int(rng.integers(y1, size))
    return BoundingBox2D(x1=x1, y1=y1, x2=x2, y2=y2, c=int(rng.integers(1, 4)))


def jittered(rng: np.random.Generator, original: BoundingBox2D, size: int) -> BoundingBox2D:
    x1, y1 = (max(0, v + int(rng.integers(-2, 3))) for v in (original.x1, original.y1))
    x2 = min(size - 1, max(x1, original.x2 + int(rng.integers(-2, 3))))
    y2 = min(size - 1, max(y1, original.y2 + int(rng.integers(-2, 3))))
    return BoundingBox2D(x1=x1, y1=y1, x2=x2, y2=y2, c=original.c)


def pixel_iou(a: BoundingBox2D, b: BoundingBox2D) -> float:
    cover_a = {(x, y) for x in range(a.x1, a.x2 + 1) for y in range(a.y1, a.y2 + 1)}
    cover_b = {(x, y) for x in range(b.x1, b.x2 + 1) for y in range(b.y1, b.y2 + 1)}
    return len(cover_a & cover_b) / len(cover_a | cover_b)


def oracle_average_precision(predictions, gt_boxes) -> float | None:
    """Greedy matching on pixel-set IoU; each true positive adds the best precision at or beyond its rank."""
    classes = sorted({gt_box.c for gt_box in gt_boxes})
    if not classes:
        return None
    per_threshold = []
    for threshold in DEFAULT_IOU_THRESHOLDS:
        per_class = []
        for c in classes:
            ranked = sorted([p for p in predictions if p[0].c == c], key=lambda p: -p[1])
            truth = [gt_box for gt_box in gt_boxes if gt_box.c == c]
            unmatched = list(range(len(truth)))
            hits = []
            for predicted, _ in ranked:
                scored = [(pixel_iou(predicted, truth[i]), -i) for i in unmatched]
                best = max(scored, default=(0.0, 0))
                hit = best[0] >= threshold
                if hit:
                    unmatched.remove(-best[1])
                hits.append(hit)
            precisions = [sum(hits[: k + 1]) / (k + 1) for k in range(len(hits))]
            per_class.append(sum(max(precisions[k:]) for k in range(len(hits)) if hits[k]) / len(truth))
        per_threshold.append(np.mean(per_class))
    return float(np.mean(per_threshold))


class TestExtractBoxes(TestCase):
    def test_no_instances(self):
        self.assertEqual([], extract_boxes(InstanceMap(np.zeros((30, 30))), SemanticMap(np.ones((30, 30)))))

    def test_single_rectangle(self):
        ids = np.zeros((30, 30), dtype=int)
        classes = np.ones((30, 30), dtype=int)
        ids[5:9, 10:21] = 4
        classes[5:9, 10:21] = 3
        boxes = extract_boxes(InstanceMap(ids), SemanticMap(classes))
        self.assertEqual([BoundingBox2D(x1=10, y1=5, x2=20, y2=8, c=3, instance_id=4)], boxes)

    def test_disjoint_blobs_give_separate_boxes(self):
        ids = np.zeros((30, 30), dtype=int)
        ids[2:7, 2:7] = 1
        ids[15:20, 12:17] = 1
        boxes = extract_boxes(InstanceMap(ids), SemanticMap(np.full((30, 30), 2)))
        self.assertEqual([(2, 2, 6, 6), (12, 15, 16, 19)], [(b.x1, b.y1, b.x2, b.y2) for b in boxes])

    def test_large_sparse_instance_ids(self):
        ids = np.zeros((30, 30), dtype=np.int64)
        ids[2:7, 2:7] = 10**9
        ids[15:20, 12:17] = 7
        boxes = extract_boxes(InstanceMap(ids), SemanticMap(np.full((30, 30), 2)))
        self.assertEqual([7, 10**9], [box.instance_id for box in boxes])
        self.assertEqual([(12, 15, 16, 19), (2, 2, 6, 6)], [(b.x1, b.y1, b.x2, b.y2) for b in boxes])

    def test_diagonal_touch_is_not_connected(self):
        ids = np.zeros((20, 20), dtype=int)
        ids[0:5, 0:5] = 2
        ids[5:10, 5:10] = 2
        self.assertEqual(2, len(extract_boxes(InstanceMap(ids), SemanticMap(np.ones((20, 20))))))

    def test_small_components_dropped(self):
        ids = np.zeros((20, 20), dtype=int)
        ids[0:4, 0:4] = 1
        self.assertEqual([], extract_boxes(InstanceMap(ids), SemanticMap(np.ones((20, 20)))))
        self.assertEqual(1, len(extract_boxes(InstanceMap(ids), SemanticMap(np.ones((20, 20))), min_area=16)))

    def test_boxes_tightly_cover_components(self):
        rng = np.random.default_rng(8)
        ids = rng.integers(0, 4, (40, 40)) * (rng.random((40, 40)) < 0.7)
        classes = rng.integers(1, 6, (40, 40))
        boxes = extract_boxes(InstanceMap(ids), SemanticMap(classes), min_area=1)

        expected = []
        for instance_id in range(1, 4):
            for component in flood_components(ids == instance_id):
                ys, xs = zip(*component)
                counts = np.bincount([classes[y, x] for y, x in component])
                expected.append((instance_id, min(ys), min(xs), max(xs), max(ys), int(counts.argmax())))
        found = [(b.instance_id, b.y1, b.x1, b.x2, b.y2, b.c) for b in boxes]
        self.assertEqual(sorted(expected), sorted(found))
        self.assertEqual(found, sorted(found, key=lambda item: (item[0], item[1], item[2])))

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            extract_boxes(InstanceMap(np.zeros((10, 10))), SemanticMap(np.ones((10, 11))))


class TestMultitaskLoss(TestCase):
    def test_confident_correct_logits(self):
        rng = np.random.default_rng(1)
        classes = rng.integers(1, 5, (6, 6))
        instances = rng.integers(1, 3, (6, 6))
        sem_logits = np.zeros((6, 6, 4))
        inst_logits = np.zeros((6, 6, 2))
        np.put_along_axis(sem_logits, (classes - 1)[..., None], 1e6, axis=2)
        np.put_along_axis(inst_logits, (instances - 1)[..., None], 1e6, axis=2)
        loss = multitask_loss(sem_logits, SemanticMap(classes, 4), inst_logits, InstanceMap(instances), LossWeights())
        self.assertLess(abs(loss), 1e-9)

    def test_uniform_two_class_logits(self):
        loss = multitask_loss(
            np.zeros((1, 1, 2)),
            SemanticMap([[1]], 2),
            np.zeros((1, 1, 2)),
            InstanceMap([[1]]),
            LossWeights(alpha=1, beta=0),
        )
        self.assertAlmostEqual(math.log(2), loss, places=12)

    def test_linear_in_weights_and_shift_invariant(self):
        rng = np.random.default_rng(2)
        sem_logits = rng.normal(size=(5, 7, 4))
        inst_logits = rng.normal(size=(5, 7, 3))
        sem = SemanticMap(rng.integers(1, 5, (5, 7)), 4)
        inst = InstanceMap(rng.integers(1, 4, (5, 7)))
        base = multitask_loss(sem_logits, sem, inst_logits, inst, LossWeights(alpha=0.7, beta=0.4))
        doubled = multitask_loss(sem_logits, sem, inst_logits, inst, LossWeights(alpha=1.4, beta=0.8))
        self.assertAlmostEqual(2 * base, doubled, delta=1e-12)

        shift = rng.normal(size=(5, 7, 1)) * 50
        shifted = multitask_loss(sem_logits + shift, sem, inst_logits + shift, inst, LossWeights(alpha=0.7, beta=0.4))
        self.assertAlmostEqual(base, shifted, delta=1e-9)

    def test_zero_alpha_ignores_semantic_head(self):
        rng = np.random.default_rng(3)
        inst_logits = rng.normal(size=(4, 4, 3))
        inst = InstanceMap(rng.integers(1, 4, (4, 4)))
        sem = SemanticMap(np.ones((4, 4)), 4)
        only_instance = multitask_loss(rng.normal(size=(4, 4, 4)), sem, inst_logits, inst, LossWeights(alpha=0, beta=2))
        reference = multitask_loss(np.zeros((4, 4, 4)), sem, inst_logits, inst, LossWeights(alpha=0, beta=1))
        self.assertEqual(2 * reference, only_instance)

    def test_shape_and_label_errors(self):
        sem = SemanticMap(np.full((2, 2), 3), 4)
        inst = InstanceMap(np.ones((2, 2)))
        with self.assertRaises(ShapeMismatch):
            multitask_loss(np.zeros((2, 3, 4)), sem, np.zeros((2, 2, 1)), inst)
        with self.assertRaises(LabelOutOfRange):
            multitask_loss(np.zeros((2, 2, 2)), sem, np.zeros((2, 2, 1)), inst)

    def test_remap_instances(self):
        remapped, mapping = remap_instances(InstanceMap([[0, 17, 17], [402, 0, 5]]))
        self.assertEqual({5: 2, 17: 3, 402: 4}, mapping)
        np.testing.assert_array_equal([[1, 3, 3], [4, 1, 2]], remapped.ids)


class TestSegmentationMetrics(TestCase):
    def test_identity(self):
        classes = SemanticMap(np.array([[1, 2], [3, 3]]), 4)
        self.assertEqual(1.0, overall_accuracy(classes, classes))
        mean, per_class = mean_iou(classes, classes, 4)
        self.assertEqual(1.0, mean)
        self.assertEqual([1.0, 1.0, 1.0, None], per_class)

    def test_half_wrong(self):
        gt = SemanticMap(np.ones((4, 4)))
        pred = SemanticMap(np.vstack([np.ones((2, 4)), np.full((2, 4), 2)]))
        self.assertEqual(0.5, overall_accuracy(pred, gt))

    def test_missed_class_counts_as_zero(self):
        gt = SemanticMap(np.array([[1, 1], [2, 2]]), 3)
        pred = SemanticMap(np.ones((2, 2)), 3)
        mean, per_class = mean_iou(pred, gt, 3)
        self.assertEqual([0.5, 0.0, None], per_class)
        self.assertAlmostEqual(0.25, mean)

    def test_random_maps_match_set_oracle(self):
        rng = np.random.default_rng(4)
        for _ in range(200):
            height, width = (int(v) for v in rng.integers(1, 33, 2))
            num_classes = int(rng.integers(2, 7))
            gt_classes = rng.integers(1, num_classes + 1, (height, width))
            pred_classes = rng.integers(1, num_classes + 1, (height, width))
            gt, pred = SemanticMap(gt_classes, num_classes), SemanticMap(pred_classes, num_classes)
            pixels = [(y, x) for y in range(height) for x in range(width)]
            correct = sum(gt_classes[p] == pred_classes[p] for p in pixels)
            self.assertAlmostEqual(correct / len(pixels), overall_accuracy(pred, gt), delta=1e-12)

            ious = []
            for c in range(1, num_classes + 1):
                in_gt = {p for p in pixels if gt_classes[p] == c}
                in_pred = {p for p in pixels if pred_classes[p] == c}
                if in_gt | in_pred:
                    ious.append(len(in_gt & in_pred) / len(in_gt | in_pred))
            mean, _ = mean_iou(pred, gt, num_classes)
            self.assertAlmostEqual(float(np.mean(ious)), mean, delta=1e-12)

    def test_relabeling_invariance(self):
        rng = np.random.default_rng(5)
        gt_classes, pred_classes = rng.integers(1, 5, (8, 8)), rng.integers(1, 5, (8, 8))
        permutation = np.array([0, 3, 1, 4, 2])
        original = mean_iou(SemanticMap(pred_classes, 4), SemanticMap(gt_classes, 4), 4)[0]
        relabeled = mean_iou(SemanticMap(permutation[pred_classes], 4), SemanticMap(permutation[gt_classes], 4), 4)[0]
        self.assertAlmostEqual(original, relabeled, delta=1e-12)

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            overall_accuracy(SemanticMap(np.ones((2, 2))), SemanticMap(np.ones((2, 3))))


class TestAveragePrecision(TestCase):
    gt_boxes = [box(0, 0, 9, 9, 1), box(20, 0, 29, 9, 1), box(0, 20, 9, 29, 2)]

    def test_perfect_detector(self):
        predictions = [(gt_box, 1.0) for gt_box in self.gt_boxes]
        self.assertEqual(1.0, average_precision(predictions, self.gt_boxes))
        for threshold in [0.5, 0.75, 0.95]:
            self.assertEqual(1.0, average_precision(predictions, self.gt_boxes, [threshold]))

    def test_no_predictions(self):
        self.assertEqual(0.0, average_precision([], self.gt_boxes))

    def test_empty_ground_truth_is_undefined(self):
        self.assertIsNone(average_precision([(box(0, 0, 5, 5, 1), 0.9)], []))

    def test_hand_evaluated_greedy_matching(self):
        predictions = [
            (box(0, 0, 9, 9, 1), 0.9),
            (box(21, 0, 30, 9, 1), 0.8),
            (box(0, 0, 9, 9, 1), 0.7),
            (box(0, 22, 9, 31, 2), 0.6),
        ]
        self.assertAlmostEqual(0.625, average_precision(predictions, self.gt_boxes), places=12)
        self.assertAlmostEqual(1.0, average_precision(predictions, self.gt_boxes, [0.5]), places=12)
        self.assertAlmostEqual(0.5, average_precision(predictions, self.gt_boxes, [0.75]), places=12)

    def test_non_increasing_in_threshold(self):
        predictions = [
            (box(0, 0, 9, 9, 1), 0.9),
            (box(21, 0, 30, 9, 1), 0.8),
            (box(1, 1, 10, 10, 1), 0.7),
            (box(0, 22, 9, 31, 2), 0.6),
        ]
        values = [average_precision(predictions, self.gt_boxes, [t]) for t in np.arange(0.5, 1.0, 0.05)]
        self.assertTrue(all(a >= b for a, b in zip(values, values[1:])))

    def test_random_sets_match_brute_force_oracle(self):
        rng = np.random.default_rng(6)
        for _ in range(200):
            size = int(rng.integers(8, 33))
            gt_boxes = [random_box(rng, size) for _ in range(rng.integers(0, 7))]
            predictions = [(jittered(rng, gt_box, size), float(rng.uniform())) for gt_box in gt_boxes[::2]]
            predictions += [(random_box(rng, size), float(rng.uniform())) for _ in range(rng.integers(0, 5))]
            expected = oracle_average_precision(predictions, gt_boxes)
            actual = average_precision(predictions, gt_boxes)
            if expected is None:
                self.assertIsNone(actual)
            else:
                self.assertAlmostEqual(expected, actual, delta=1e-12)

    def test_frames_are_matched_separately(self):
        frame_a = ([(box(0, 0, 9, 9, 1), 0.9)], [box(0, 0, 9, 9, 1)])
        frame_b = ([(box(0, 0, 9, 9, 1), 0.8)], [box(40, 40, 49, 49, 1)])
        self.assertAlmostEqual(0.5, average_precision_over_frames([frame_a, frame_b], [0.5]), places=12)
