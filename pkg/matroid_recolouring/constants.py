# longest supported coordinate vector
MAX_VECTOR_LENGTH = 4096

# exponent cap for full row-space / null-space enumerations
DEFAULT_MAX_RANK = 24

# cap on |E(N)|^rank(M) when enumerating homomorphisms (and on graph colourings)
DEFAULT_MAX_HOMS = 10**8

# cap on visited states in implicit breadth-first searches
DEFAULT_MAX_STATES = 10**6

# first line of every file and report written by the tool
FORMAT_VERSION = 1
FORMAT_HEADER = f"# matroid-recolouring format v{FORMAT_VERSION}"

COMMENT_PREFIX = "#"

# smallest clique the gadget reduction accepts inside the target matroid
MIN_GADGET_CLIQUE = 5

# size of the star M_Z and of the source clique M(K_4)
GADGET_STAR_SIZE = 4

# smallest size of a stored file considered valid
MIN_VALID_SIZE_BYTES = 1

# comment hint fixing the vertex count of an .edges file (isolated vertices)
VERTICES_HINT = "vertices:"
