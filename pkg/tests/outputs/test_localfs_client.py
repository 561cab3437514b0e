import pytest

from matroid_recolouring.outputs.localfs.client import LocalClient


@pytest.fixture
def client() -> LocalClient:
    return LocalClient()


class TestLocalClient:
    def test_store_creates_parent_folders(self, client, tmp_path):
        # Arrange
        destination = tmp_path / "out" / "k3.bm"

        # Act
        path = client.store(text="110\n101\n011\n", destination_path=destination)

        # Assert
        assert path == destination
        assert destination.read_text() == "110\n101\n011\n"
        assert client.exists(path=destination)

    def test_is_valid(self, client, tmp_path):
        # Arrange
        empty = tmp_path / "empty.bm"
        empty.write_text("")
        full = client.store(text="1\n", destination_path=tmp_path / "full.bm")

        # Act / Assert
        assert not client.is_valid(path=empty)
        assert client.is_valid(path=full)
        assert client.is_valid(path=tmp_path)
        assert not client.is_valid(path=tmp_path / "missing.bm")
