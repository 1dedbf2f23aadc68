"""
Service Container for Dependency Injection

Services are built lazily and cached, so the catalog fingerprint table and the tangent
caches are computed at most once per process. Tests inject overrides.
"""

from typing import Optional

from ..services.classifier_service import ClassifierService, default_classifier
from ..services.closure_service import ClosureService
from ..services.strata_service import StrataService
from ..services.tangent import TangentService
from ..utils.logging import get_logger

logger = get_logger('service_container')


class ServiceContainer:
    """
    Service container that manages service lifecycle and dependencies.

    Services are lazily initialized and cached. Services can be overridden for testing.
    """

    def __init__(self, seed: Optional[int] = None):
        self.seed = seed
        self._classifier_service: Optional[ClassifierService] = None
        self._tangent_service: Optional[TangentService] = None
        self._strata_service: Optional[StrataService] = None
        self._closure_service: Optional[ClosureService] = None

        # Track if services are overridden (for testing)
        self._overrides: dict = {}

        logger.debug("Service container initialized")

    # Classifier Service
    def get_classifier_service(self, override: Optional[ClassifierService] = None) -> ClassifierService:
        """
        Get or create the ClassifierService instance.

        The shared default classifier is reused so the fingerprint table is built once.
        """
        if override is not None:
            self._overrides['classifier_service'] = override
            self._classifier_service = override
            return override

        if 'classifier_service' in self._overrides:
            return self._overrides['classifier_service']

        if self._classifier_service is None:
            logger.debug("Creating ClassifierService instance")
            self._classifier_service = default_classifier()

        return self._classifier_service

    # Tangent Service
    def get_tangent_service(self, override: Optional[TangentService] = None) -> TangentService:
        if override is not None:
            self._overrides['tangent_service'] = override
            self._tangent_service = override
            return override

        if 'tangent_service' in self._overrides:
            return self._overrides['tangent_service']

        if self._tangent_service is None:
            logger.debug("Creating TangentService instance")
            self._tangent_service = TangentService()

        return self._tangent_service

    # Strata Service
    def get_strata_service(self, override: Optional[StrataService] = None) -> StrataService:
        if override is not None:
            self._overrides['strata_service'] = override
            self._strata_service = override
            return override

        if 'strata_service' in self._overrides:
            return self._overrides['strata_service']

        if self._strata_service is None:
            logger.debug("Creating StrataService instance")
            self._strata_service = StrataService(seed=self.seed)

        return self._strata_service

    # Closure Service
    def get_closure_service(self, override: Optional[ClosureService] = None) -> ClosureService:
        """
        Get or create the ClosureService instance.

        Requires the ClassifierService.
        """
        if override is not None:
            self._overrides['closure_service'] = override
            self._closure_service = override
            return override

        if 'closure_service' in self._overrides:
            return self._overrides['closure_service']

        if self._closure_service is None:
            classifier = self.get_classifier_service()
            logger.debug("Creating ClosureService instance")
            self._closure_service = ClosureService(classifier)

        return self._closure_service

    def clear_overrides(self):
        """Clear all service overrides (useful for testing cleanup)"""
        self._overrides.clear()
        logger.debug("Service overrides cleared")

    def reset(self):
        """Reset all services (for testing)"""
        self._classifier_service = None
        self._tangent_service = None
        self._strata_service = None
        self._closure_service = None
        self._overrides.clear()
        logger.debug("Service container reset")
