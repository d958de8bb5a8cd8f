DEFAULT_NFOLDS = 10
DEFAULT_NSPLITS = 3
# split s gets seed SEED_STEP * s unless seeds are given
SEED_STEP = 11111
DEFAULT_THRESHOLD = 0.5
DEFAULT_IE_TESTS = 300
DEFAULT_METHODS = ["KNN", "Ridge", "Tree", "RF"]
DEFAULT_METRIC = "enhancement"
