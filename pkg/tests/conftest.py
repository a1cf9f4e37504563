import warnings

import pytest

from sscert.errors import MixedSignDirectionWarning


@pytest.fixture
def mixed_sign_warnings():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", MixedSignDirectionWarning)
        yield caught
