"""
Tests for configuration settings module.
"""

import os
import tempfile
import yaml
from pathlib import Path
from unittest.mock import patch
import pytest

import config.settings
from config.settings import (
    DEFAULT_CONFIG,
    SamplingConfig,
    GuardConfig,
    VerificationConfig,
    LoggingConfig,
    AppConfig,
    Config,
    load_yaml_config,
    merge_configs,
    apply_env_overrides,
    apply_cli_overrides,
    load_dotenv_files,
    load_config,
    get_config
)


def _config_data(**overrides):
    data = merge_configs(DEFAULT_CONFIG, {})
    return merge_configs(data, overrides)


def _config(environment='dev'):
    return Config(
        environment=environment,
        logging=LoggingConfig('INFO', 'format'),
        sampling=SamplingConfig(0, 99, 50, 5),
        guards=GuardConfig(100000, 36, 8),
        verification=VerificationConfig(3),
        app=AppConfig('app', '1.0.0')
    )


@pytest.mark.unit
class TestSamplingConfig:
    """Test SamplingConfig dataclass."""

    def test_initialization(self):
        """Test basic initialization."""
        sampling = SamplingConfig(seed=7, coordinate_bound=10, max_retries=3, samples=2)

        assert sampling.seed == 7
        assert sampling.coordinate_bound == 10
        assert sampling.max_retries == 3
        assert sampling.samples == 2


@pytest.mark.unit
class TestGuardConfig:
    """Test GuardConfig dataclass."""

    def test_initialization(self):
        guards = GuardConfig(max_monomials=500, max_reduction_dim=12, max_series_size=4)

        assert guards.max_monomials == 500
        assert guards.max_reduction_dim == 12
        assert guards.max_series_size == 4


@pytest.mark.unit
class TestVerificationConfig:
    """Test VerificationConfig dataclass."""

    def test_default_generators(self):
        """Test that invariance checks use all generators by default."""
        verification = VerificationConfig(degree_bound=3)

        assert verification.invariance_generators == 'all'

    def test_simple_generators(self):
        verification = VerificationConfig(degree_bound=2, invariance_generators='simple')

        assert verification.invariance_generators == 'simple'

    def test_rejects_unknown_generators(self):
        """Test that an unknown generator mode is rejected."""
        with pytest.raises(ValueError, match="invariance_generators"):
            VerificationConfig(degree_bound=3, invariance_generators='some')


@pytest.mark.unit
class TestConfig:
    """Test main Config dataclass."""

    def test_initialization(self):
        """Test complete config initialization."""
        config = _config()

        assert config.environment == "dev"
        assert config.sampling.samples == 5
        assert config.guards.max_series_size == 8
        assert config.verification.degree_bound == 3
        assert config.app.version == "1.0.0"


@pytest.mark.unit
class TestLoadYamlConfig:
    """Test YAML configuration loading."""

    def test_load_existing_file(self):
        """Test loading an existing YAML file."""
        yaml_content = {
            'sampling': {
                'seed': 3,
                'samples': 2
            }
        }

        with tempfile.NamedTemporaryFile(mode='w', suffix='.yml', delete=False) as f:
            yaml.dump(yaml_content, f)
            temp_path = Path(f.name)

        try:
            result = load_yaml_config(temp_path)
            assert result == yaml_content
        finally:
            temp_path.unlink()

    def test_load_empty_file(self, temp_dir):
        """Test that an empty YAML file loads as an empty mapping."""
        path = Path(temp_dir) / 'empty.yml'
        path.write_text('')

        assert load_yaml_config(path) == {}

    def test_load_nonexistent_file(self):
        """Test loading a non-existent file raises FileNotFoundError."""
        nonexistent_path = Path("/tmp/nonexistent_config.yml")

        with pytest.raises(FileNotFoundError) as exc_info:
            load_yaml_config(nonexistent_path)

        assert "Configuration file not found" in str(exc_info.value)


@pytest.mark.unit
class TestMergeConfigs:
    """Test configuration merging functionality."""

    def test_merge_simple_configs(self):
        """Test merging non-nested configurations."""
        base = {'a': 1, 'b': 2}
        override = {'b': 3, 'c': 4}

        result = merge_configs(base, override)

        assert result == {'a': 1, 'b': 3, 'c': 4}

    def test_merge_nested_configs(self):
        """Test merging nested configurations."""
        base = {
            'sampling': {'seed': 0, 'samples': 5},
            'guards': {'max_monomials': 100000}
        }
        override = {
            'sampling': {'samples': 10}
        }

        result = merge_configs(base, override)

        assert result == {
            'sampling': {'seed': 0, 'samples': 10},
            'guards': {'max_monomials': 100000}
        }

    def test_merge_preserves_original(self):
        """Test that merge doesn't modify original configs."""
        base = {'a': 1, 'b': 2}
        override = {'b': 3, 'c': 4}

        original_base = base.copy()
        original_override = override.copy()

        merge_configs(base, override)

        assert base == original_base
        assert override == original_override


@pytest.mark.unit
class TestApplyEnvOverrides:
    """Test environment variable override functionality."""

    def test_apply_string_overrides(self):
        config = {'logging': {'level': 'INFO'}}

        with patch.dict(os.environ, {'LOG_LEVEL': 'DEBUG'}, clear=True):
            result = apply_env_overrides(config)

        assert result['logging']['level'] == 'DEBUG'

    def test_apply_integer_overrides(self):
        """Test that numeric settings are converted to int."""
        config = {
            'sampling': {'seed': 0, 'samples': 5},
            'guards': {'max_monomials': 100000},
            'verification': {'degree_bound': 3}
        }

        with patch.dict(os.environ, {
            'SAMPLING_SEED': '42',
            'SAMPLING_SAMPLES': '9',
            'MAX_MONOMIALS': '500',
            'MAX_REDUCTION_DIM': '63',
            'DEGREE_BOUND': '2'
        }, clear=True):
            result = apply_env_overrides(config)

        assert result['sampling']['seed'] == 42
        assert result['sampling']['samples'] == 9
        assert result['guards']['max_monomials'] == 500
        assert result['guards']['max_reduction_dim'] == 63
        assert result['verification']['degree_bound'] == 2
        assert isinstance(result['sampling']['seed'], int)

    def test_no_env_vars_no_change(self):
        """Test that config is unchanged when no env vars are set."""
        config = {'sampling': {'seed': 0}}

        with patch.dict(os.environ, {}, clear=True):
            result = apply_env_overrides(config)

        assert result == config

    def test_creates_missing_nested_keys(self):
        """Test that missing nested keys are created."""
        config = {}

        with patch.dict(os.environ, {'SAMPLING_SEED': '5'}, clear=True):
            result = apply_env_overrides(config)

        assert result['sampling']['seed'] == 5

    def test_does_not_mutate_nested_input(self):
        config = {'sampling': {'seed': 0}}

        with patch.dict(os.environ, {'SAMPLING_SEED': '5'}, clear=True):
            apply_env_overrides(config)

        assert config['sampling']['seed'] == 0


@pytest.mark.unit
class TestApplyCliOverrides:
    """Test command line override functionality."""

    def test_no_overrides(self):
        config = {'sampling': {'seed': 0}}

        assert apply_cli_overrides(config, None) == config
        assert apply_cli_overrides(config, {}) == config

    def test_maps_options_onto_sections(self):
        config = _config_data()

        result = apply_cli_overrides(config, {
            'seed': 11,
            'samples': 2,
            'degree_bound': 4,
            'log_level': 'ERROR'
        })

        assert result['sampling']['seed'] == 11
        assert result['sampling']['samples'] == 2
        assert result['verification']['degree_bound'] == 4
        assert result['logging']['level'] == 'ERROR'

    def test_ignores_none_values(self):
        config = _config_data()

        result = apply_cli_overrides(config, {'seed': None})

        assert result['sampling']['seed'] == DEFAULT_CONFIG['sampling']['seed']


@pytest.mark.unit
class TestLoadDotenvFiles:
    """Test .env file loading functionality."""

    @patch('config.settings.load_dotenv')
    @patch('pathlib.Path.exists')
    def test_load_dotenv_files_both_exist(self, mock_exists, mock_load_dotenv):
        """Test loading when both .env and .env.local exist."""
        mock_exists.return_value = True
        project_root = Path("/fake/project")

        load_dotenv_files(project_root)

        assert mock_load_dotenv.call_count == 2

        expected_calls = [
            ((project_root / '.env',), {'override': True}),
            ((project_root / '.env.local',), {'override': True})
        ]
        actual_calls = [(call.args, call.kwargs) for call in mock_load_dotenv.call_args_list]
        assert actual_calls == expected_calls

    @patch('config.settings.load_dotenv')
    @patch('pathlib.Path.exists')
    def test_load_dotenv_files_only_env_exists(self, mock_exists, mock_load_dotenv):
        """Test loading when only .env exists."""
        mock_exists.side_effect = [True, False]
        project_root = Path("/fake/project")

        load_dotenv_files(project_root)

        assert mock_load_dotenv.call_count == 1
        mock_load_dotenv.assert_called_with(project_root / '.env', override=True)

    @patch('config.settings.load_dotenv')
    @patch('pathlib.Path.exists')
    def test_load_dotenv_files_none_exist(self, mock_exists, mock_load_dotenv):
        """Test loading when no .env files exist."""
        mock_exists.return_value = False
        project_root = Path("/fake/project")

        load_dotenv_files(project_root)

        assert mock_load_dotenv.call_count == 0


@pytest.mark.unit
class TestLoadConfig:
    """Test full configuration loading."""

    @patch('config.settings.load_dotenv_files')
    @patch('config.settings.load_yaml_config')
    def test_load_config_default_environment(self, mock_load_yaml, mock_load_dotenv):
        """Test loading config with default environment."""
        mock_load_yaml.return_value = {'sampling': {'seed': 3}}
        mock_load_dotenv.return_value = None

        with patch('pathlib.Path.exists', return_value=True), patch.dict(os.environ, {}, clear=True):
            config = load_config()

        assert isinstance(config, Config)
        assert config.environment == 'dev'
        assert config.sampling.seed == 3
        assert config.guards.max_reduction_dim == DEFAULT_CONFIG['guards']['max_reduction_dim']

    @patch('config.settings.load_dotenv_files')
    @patch('config.settings.load_yaml_config')
    def test_load_config_with_environment(self, mock_load_yaml, mock_load_dotenv):
        """Test loading config with specific environment."""
        base_config = _config_data()
        env_config = {
            'sampling': {'samples': 10},
            'logging': {'level': 'WARNING'}
        }
        mock_load_yaml.side_effect = [base_config, env_config]
        mock_load_dotenv.return_value = None

        with patch('pathlib.Path.exists', return_value=True), patch.dict(os.environ, {}, clear=True):
            config = load_config('prod')

        assert config.environment == 'prod'
        assert config.sampling.samples == 10
        assert config.sampling.seed == 0  # From base config
        assert config.logging.level == 'WARNING'

    @patch('config.settings.load_dotenv_files')
    @patch('config.settings.load_yaml_config')
    def test_cli_overrides_beat_environment(self, mock_load_yaml, mock_load_dotenv):
        """Test the precedence of CLI arguments over environment variables."""
        mock_load_yaml.return_value = _config_data()
        mock_load_dotenv.return_value = None

        with patch('pathlib.Path.exists', return_value=True), \
                patch.dict(os.environ, {'SAMPLING_SEED': '5'}, clear=True):
            config = load_config('dev', cli_overrides={'seed': 9})

        assert config.sampling.seed == 9

    def test_falls_back_to_defaults_without_project(self):
        """Test that built-in defaults are used outside a checkout."""
        with patch('config.settings.find_project_root', side_effect=FileNotFoundError), \
                patch.dict(os.environ, {}, clear=True):
            config = load_config('dev')

        assert config.sampling.coordinate_bound == DEFAULT_CONFIG['sampling']['coordinate_bound']
        assert config.verification.degree_bound == DEFAULT_CONFIG['verification']['degree_bound']
        assert config.app.name == 'cascade-invariants'


@pytest.mark.unit
class TestGetConfig:
    """Test get_config singleton functionality."""

    def test_get_config_singleton(self):
        """Test that get_config returns the same instance."""
        config.settings._config = None

        with patch('config.settings.load_config') as mock_load:
            mock_load.return_value = _config()

            config1 = get_config()
            config2 = get_config()

            assert config1 is config2
            assert mock_load.call_count == 1

        config.settings._config = None

    def test_get_config_reload(self):
        """Test that reload forces new config load."""
        config.settings._config = None

        with patch('config.settings.load_config') as mock_load:
            mock_load.return_value = _config()

            get_config()
            get_config(reload=True)

            assert mock_load.call_count == 2

        config.settings._config = None

    def test_cli_overrides_force_reload(self):
        config.settings._config = None

        with patch('config.settings.load_config') as mock_load:
            mock_load.return_value = _config()

            get_config()
            get_config(cli_overrides={'seed': 1})

            assert mock_load.call_count == 2
            mock_load.assert_called_with(None, {'seed': 1})

        config.settings._config = None
