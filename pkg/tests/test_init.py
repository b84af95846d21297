import unittest

import h2cruise


class InitTestCase(unittest.TestCase):
    def test_version(self):
        self.assertEqual("0.1.0", h2cruise.__version__)
