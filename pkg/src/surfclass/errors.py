"""Exception hierarchy shared by all subpackages."""


class SurfclassError(Exception):
    """Base class for every error raised by this package."""


class GeometryError(SurfclassError):
    pass


class SelfIntersection(GeometryError):
    def __init__(self, edges):
        self.edges = edges
        super().__init__(f"polygon edges {edges[0]} and {edges[1]} intersect")


class DegenerateVertex(GeometryError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"vertex {index} is repeated or collinear with its neighbours")


class InvalidRegion(GeometryError):
    pass


class SingularSystem(GeometryError):
    pass


class EmbeddingError(GeometryError):
    pass


class OutsideDomain(GeometryError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"point {point} lies outside the map's domain")


class NotInjective(GeometryError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"image triangles {pair} overlap")


class ComplexError(SurfclassError):
    pass


class MissingFace(ComplexError):
    def __init__(self, simplex, missing):
        self.simplex = simplex
        self.missing = missing
        super().__init__(f"simplex {simplex} lacks face {missing}")


class IsolatedVertexViolation(ComplexError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} lies in no edge or triangle")


class SharedTriangle(ComplexError):
    def __init__(self, edges):
        self.edges = edges
        super().__init__(f"edges {edges[0]} and {edges[1]} lie in a common triangle")


class NotAnEdge(ComplexError):
    pass


class NotSubcomplex(ComplexError):
    pass


class NotClosedSurface(ComplexError):
    pass


class RecipeError(SurfclassError):
    pass


class GluingMismatch(RecipeError):
    def __init__(self, circles):
        self.circles = circles
        super().__init__(f"cannot glue circles {circles[0]} and {circles[1]}")


class UnknownName(RecipeError):
    pass


class NotNormalizable(SurfclassError):
    pass


class CountsNotCertified(SurfclassError):
    pass


class NonDisk(GeometryError):
    pass


class CorrespondenceMismatch(GeometryError):
    pass


class BoxTooSmall(GeometryError):
    pass


class NotSimple(GeometryError):
    pass


class AtlasError(SurfclassError):
    pass


class NotHausdorff(AtlasError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"glued space is not Hausdorff; witness {witness}")


class FaceNotDisk(AtlasError):
    def __init__(self, face):
        self.face = face
        super().__init__(f"face {face} is not a disk")


class Disconnected(AtlasError):
    pass


class MoebiusError(SurfclassError):
    pass


class IsIdentity(MoebiusError):
    pass


class NotElementaryCompatible(MoebiusError):
    pass


class TorsionDetected(MoebiusError):
    pass


class ParseError(SurfclassError):
    def __init__(self, line, expected):
        self.line = line
        self.expected = expected
        super().__init__(f"line {line}: expected {expected}")


class KindMismatch(SurfclassError):
    pass
