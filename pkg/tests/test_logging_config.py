import logging

from ordinaryplanes.errors import DegenerateSubsetError
from ordinaryplanes.logging_config import ColoredFormatter, log_error_with_context, setup_logging
from ordinaryplanes.progress import NoOpProgressBar, SimpleProgressBar, create_progress_bar


def test_levels():
    assert setup_logging(verbose=True).level == logging.DEBUG
    assert setup_logging(quiet=True).level == logging.ERROR
    assert setup_logging('warning').level == logging.WARNING


def test_file_gets_witness(tmp_path):
    log_file = tmp_path / 'logs' / 'run.log'
    setup_logging('ERROR', log_file=str(log_file))
    error = DegenerateSubsetError("Points do not span", witness=(0, 1, 2))
    log_error_with_context(error, "analyze failed", 'input.json')
    text = log_file.read_text()
    assert 'DegenerateSubsetError - Points do not span' in text
    assert 'Witness points: [0, 1, 2]' in text
    assert 'Input file: input.json' in text


def test_colored_formatter_restores_levelname():
    record = logging.LogRecord('ordinaryplanes', logging.INFO, __file__, 1, 'hello', None, None)
    line = ColoredFormatter('%(levelname)s: %(message)s').format(record)
    assert 'hello' in line
    assert record.levelname == 'INFO'


def test_progress_factory(capsys):
    assert isinstance(create_progress_bar(disable=True), NoOpProgressBar)
    bar = create_progress_bar(desc="Spanning", total=4, simple=True)
    assert isinstance(bar, SimpleProgressBar)
    with bar:
        for i in range(1, 5):
            bar.update(i, 4)
    err = capsys.readouterr().err
    assert 'Spanning: 25%' in err
    assert 'Spanning: 100%' in err
