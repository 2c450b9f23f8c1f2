from .render import CsvFormatError, PanelSpec, load_points, render_panel

__version__ = "0.1.0"
