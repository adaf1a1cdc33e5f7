# Import center definitions so they register themselves
from billiardlab.centers import kimberling  # noqa: F401
