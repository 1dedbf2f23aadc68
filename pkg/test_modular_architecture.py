#!/usr/bin/env python3
"""
Test script for the layered package: config, logging, helpers and the service container
"""

import logging
import os

import pytest
from sympy import QQ


def test_imports():
    """Test all layers import"""
    print("Testing imports...")
    from skewpfaff.utils.config import Config
    from skewpfaff.utils.logging import setup_logging
    from skewpfaff.models import SkewLinMatrix
    from skewpfaff.services import ClassifierService, ClosureService, StrataService, TangentService
    from skewpfaff.core import ServiceContainer
    from skewpfaff.api import main
    assert all([Config, setup_logging, SkewLinMatrix, ClassifierService, ClosureService,
                StrataService, TangentService, ServiceContainer, main])
    print("SUCCESS: all layers imported")


def test_configuration():
    """Test configuration defaults and run config overrides"""
    print("\nTesting configuration...")
    from skewpfaff.utils.config import Config

    print(f"Seed: {Config.SEED}")
    print(f"Colon cap: {Config.COLON_CAP}")
    print(f"Jet order: {Config.JET_ORDER}")
    assert Config.COLON_CAP >= 1
    assert Config.JET_ORDER >= 1
    run_config = Config.get_run_config(seed=7, workers=None)
    assert run_config['seed'] == 7
    assert run_config['workers'] == Config.WORKERS
    assert Config.fixture_path('tables.json').endswith('tables.json')
    if 'SKEWPFAFF_RANDOM_TRIALS' not in os.environ:
        assert Config.RANDOM_TRIALS == 200


def test_configuration_validation(monkeypatch):
    from skewpfaff.utils.config import Config

    monkeypatch.setattr(Config, 'COLON_CAP', 0)
    assert not Config.validate()


def test_piece_cache_must_be_positive(monkeypatch):
    from skewpfaff.utils.config import Config

    monkeypatch.setattr(Config, 'PIECE_CACHE', 0)
    assert not Config.validate()


def test_utility_functions():
    """Test rational formatting and input digests"""
    print("\nTesting utility functions...")
    from skewpfaff.utils.errors import InterchangeError
    from skewpfaff.models.polynomial import x_ring
    from skewpfaff.utils.helpers import (
        format_rational, input_digest, parse_rational, polynomial_from_terms, polynomial_to_terms
    )

    assert format_rational(QQ(-3, 6)) == '-1/2'
    assert format_rational(QQ(4)) == '4'
    assert parse_rational(' 2/4 ') == QQ(1, 2)
    with pytest.raises(InterchangeError):
        parse_rational('1/0')
    with pytest.raises(InterchangeError):
        parse_rational(3)
    assert input_digest({'b': 1, 'a': 2}) == input_digest({'a': 2, 'b': 1})
    ring = x_ring()
    cubic = ring.gens[0] ** 3 * QQ(2, 3) - ring.gens[4] ** 3
    assert polynomial_from_terms(ring, polynomial_to_terms(cubic)) == cubic
    print("SUCCESS: helpers behave")


def test_logging():
    """Test logging setup"""
    print("\nTesting logging...")
    from skewpfaff.utils.logging import get_logger, setup_logging

    logger = setup_logging(level='INFO')
    assert logger.level == logging.INFO
    assert len(logger.handlers) == 1
    test_logger = get_logger('test')
    assert test_logger.name == 'skewpfaff.test'
    test_logger.info("Test log message")
    setup_logging(level='WARNING')


def test_log_lines_carry_the_run_context():
    """Records are stamped with the bound command and seed"""
    from skewpfaff.utils.logging import bind_run, setup_logging

    handler = setup_logging(level='INFO').handlers[0]
    record = logging.LogRecord('skewpfaff.test', logging.INFO, __file__, 1, 'checked', None, None)
    bind_run('classify', 7)
    try:
        assert handler.filter(record)
        assert '[classify seed=7] checked' in handler.format(record)
    finally:
        bind_run('-')
        setup_logging(level='WARNING')


def test_service_container_caches(container):
    """Services are created once per container"""
    assert container.get_tangent_service() is container.get_tangent_service()
    assert container.get_strata_service().seed == container.seed
    closure = container.get_closure_service()
    assert closure.classifier is container.get_classifier_service()


def test_service_container_overrides(container):
    from skewpfaff.services import ClassifierService, StrataService

    classifier = ClassifierService()
    assert container.get_classifier_service(override=classifier) is classifier
    assert container.get_classifier_service() is classifier
    assert container.get_closure_service().classifier is classifier

    strata = StrataService(seed=5)
    container.get_strata_service(override=strata)
    container.clear_overrides()
    assert container.get_strata_service() is strata

    container.reset()
    assert container.get_strata_service() is not strata
    assert container.get_classifier_service() is not classifier


def main():
    """Run the checks without pytest"""
    print("Testing Layered Architecture")
    print("=" * 50)

    tests = [
        test_imports,
        test_configuration,
        test_utility_functions,
        test_logging,
        test_log_lines_carry_the_run_context,
    ]

    passed = 0
    for test in tests:
        try:
            test()
            passed += 1
        except Exception as e:
            print(f"ERROR: {test.__name__} failed: {e}")

    print("\n" + "=" * 50)
    print(f"Test Results: {passed}/{len(tests)} tests passed")
    return passed == len(tests)


if __name__ == "__main__":
    main()
