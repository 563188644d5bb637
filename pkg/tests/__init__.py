import unittest


def load_tests(loader: unittest.TestLoader, tests, pattern):
    # Bottom-up, so a failure in the arithmetic shows up before the failures it causes further up.
    for module in (
        'test_coefficient_fields',
        'test_parser',
        'test_polyring',
        'test_groebner',
        'test_resolution',
        'test_symmetric_group',
        'test_equivariant',
        'test_fields',
        'test_schema',
        'test_cli',
        'test_klein',
    ):
        tests.addTests(loader.loadTestsFromName('tests.' + module))

    return tests
