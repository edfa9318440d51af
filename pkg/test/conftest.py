# absltest.main() normally parses absl flags; under pytest they must be parsed here so
# absltest helpers such as create_tempdir (which reads --test_tmpdir) work.
import sys

from absl import flags


def pytest_configure(config):
    if not flags.FLAGS.is_parsed():
        flags.FLAGS(sys.argv[:1], known_only=True)
