# Tests for arcade
