from domain.GrayImage import GrayImage


class ImagePyramid:
    def __init__(self, levels: list[GrayImage]):
        self.levels: list[GrayImage] = list(levels)

    @property
    def level_count(self) -> int:
        return len(self.levels)

    def structure(self) -> list[tuple[int, int]]:
        return [(level.width, level.height) for level in self.levels]
