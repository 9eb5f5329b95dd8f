import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from gradedmod import corpus


@pytest.fixture(scope="session")
def instances():
    return corpus.named_instances()
