"""k-synchronizability toolkit for communicating finite-state machines.

Модули:
- model: системы автоматов, конфигурации, асинхронная семантика, инструментирование;
- msc / conflict_graph: MSC, граф конфликтов и переборные оракулы;
- exchange / lts / membership / p2p: абстрактная семантика k-обменов и процедуры решения.
"""

__version__ = "0.3.0"
