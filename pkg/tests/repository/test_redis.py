from unittest.mock import MagicMock, patch

import pytest

from wicksell_tails.config.storage import RedisConfig
from wicksell_tails.repository.redis import RedisRepository


@pytest.fixture
def redis_config():
    """Fixture for Redis configuration."""
    return RedisConfig(
        host="localhost",
        port=6379,
        db=0,
        password=None,
        key_prefix="test",
    )


@pytest.fixture
def redis_mock():
    """Fixture to create a mock Redis instance."""
    return MagicMock()


@pytest.fixture
def redis_repository(redis_config, redis_mock):
    """Fixture to create a RedisRepository instance with a mocked Redis client."""
    with patch(
        "wicksell_tails.repository.redis.Redis.from_url", return_value=redis_mock
    ) as from_url:
        repo = RedisRepository(config=redis_config)
        from_url.assert_called_once_with("redis://localhost:6379/0", decode_responses=True)
        yield repo


def test_get_existing_key(redis_repository, redis_mock):
    """Test getting an existing key from Redis."""
    redis_mock.get.return_value = "test_value"

    value = redis_repository.get("test_key")

    redis_mock.get.assert_called_once_with("test:test_key")
    assert value == "test_value"


def test_get_decodes_bytes(redis_repository, redis_mock):
    redis_mock.get.return_value = "test_value".encode("utf-8")
    assert redis_repository.get("test_key") == "test_value"


def test_get_nonexistent_key(redis_repository, redis_mock):
    """Test getting a non-existent key from Redis."""
    redis_mock.get.return_value = None

    assert redis_repository.get("nonexistent_key") is None


def test_set_key(redis_repository, redis_mock):
    """Test setting a key in Redis."""
    redis_repository.set("test_key", "test_value")

    redis_mock.set.assert_called_once_with("test:test_key", "test_value")


def test_delete_key(redis_repository, redis_mock):
    """Test deleting a key from Redis."""
    redis_repository.delete("test_key")

    redis_mock.delete.assert_called_once_with("test:test_key")


def test_clear_deletes_prefixed_keys(redis_repository, redis_mock):
    redis_mock.scan_iter.return_value = iter(["test:a", "test:b"])

    redis_repository.clear()

    redis_mock.scan_iter.assert_called_once_with(match="test:*")
    redis_mock.delete.assert_called_once_with("test:a", "test:b")


def test_clear_with_no_keys(redis_repository, redis_mock):
    redis_mock.scan_iter.return_value = iter([])

    redis_repository.clear()

    redis_mock.delete.assert_not_called()


def test_singleton_behavior(redis_repository, redis_config):
    """Test that the RedisRepository is a singleton."""
    assert RedisRepository(config=redis_config) is redis_repository
    assert redis_repository.redis is RedisRepository(config=redis_config).redis


def test_redis_connection_failure(redis_config):
    """Test that a RedisRepository raises when the client cannot be built."""
    with patch(
        "wicksell_tails.repository.redis.Redis.from_url",
        side_effect=Exception("Connection error"),
    ):
        with pytest.raises(Exception, match="Connection error"):
            RedisRepository(config=redis_config)
