import os

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

import config


class ChartGenerator:
    def __init__(self, save_path: str = None, quiet: bool = False):
        self.save_path = save_path or config.CHART_SAVE_PATH
        self.quiet = quiet
        self.setup_style()
        self.ensure_chart_directory()

    def setup_style(self):
        """Setup matplotlib style for the validation figures"""
        plt.rcParams['figure.figsize'] = (12, 7)
        plt.rcParams['font.size'] = 10
        plt.rcParams['axes.grid'] = True
        plt.rcParams['grid.alpha'] = 0.3

    def ensure_chart_directory(self):
        """Ensure the chart directory exists"""
        if not os.path.exists(self.save_path):
            os.makedirs(self.save_path)
            if not self.quiet:
                print(f"Created chart directory: {self.save_path}")

    def _save(self, name: str) -> str:
        path = os.path.join(self.save_path, f'{name}.{config.CHART_FORMAT}')
        plt.tight_layout()
        plt.savefig(path, dpi=300, bbox_inches='tight')
        plt.close()
        if not self.quiet:
            print(f"Chart saved: {path}")
        return path

    def plot_ratio_bounds(self, records: pd.DataFrame, epsilon: float, name: str = 'pq_ratio_bounds'):
        """
        Approximation ratio D_hat / D per sampled pair with (1 +- eps * C_ij) error bars

        Args:
            records (pd.DataFrame): rows from validate_pq_bound (d, d_hat, c_ij, within)
            epsilon (float): projection epsilon
            name (str): output file stem

        Returns:
            str: Path to saved chart, or None when there is nothing to plot
        """
        plot_df = records[records['d'] != 0].reset_index(drop=True)
        if len(plot_df) == 0:
            print("No pairs with non-zero dissimilarity to plot")
            return None

        x = np.arange(len(plot_df))
        half_width = epsilon * plot_df['c_ij'].to_numpy()
        ratio = (plot_df['d_hat'] / plot_df['d']).to_numpy()
        colors = np.where(plot_df['within'], 'green', 'red')

        fig, ax = plt.subplots()
        ax.errorbar(x, np.ones(len(x)), yerr=half_width, fmt='none', ecolor='gray',
                    capsize=4, alpha=0.8, label='1 ± ε·C_ij')
        ax.scatter(x, ratio, c=colors, s=40, zorder=3)
        ax.axhline(1.0, color='black', linewidth=0.8, linestyle='--')
        ax.set_xticks(x)
        ax.set_xticklabels([f"({i},{j})" for i, j in zip(plot_df['i'], plot_df['j'])], rotation=45)
        ax.set_xlabel('Pair', fontsize=12)
        ax.set_ylabel('D̂ / D', fontsize=12)
        ax.set_title(f'Pseudo-Euclidean JL approximation ratio (ε = {epsilon})',
                     fontsize=14, fontweight='bold')
        ax.legend(loc='upper left')
        return self._save(name)

    def plot_residuals(self, records: pd.DataFrame, epsilon: float, radius: float,
                       shrink: float = None, name: str = 'power_residuals'):
        """Residual per sampled pair against the line 4 * eps * (r / shrink)^2"""
        if len(records) == 0:
            print("No pairs to plot")
            return None
        shrink = shrink or config.RESIDUAL_DISPLAY_SHRINK
        line = 4.0 * epsilon * (radius / shrink) ** 2

        fig, ax = plt.subplots()
        ax.plot(np.arange(len(records)), records['residual'], 'o', color='steelblue',
                markersize=4, label='residual')
        ax.axhline(line, color='red', linewidth=1.5, label=f'4ε(r/{shrink:g})² = {line:.4g}')
        ax.set_xlabel('Pair', fontsize=12)
        ax.set_ylabel('Residual error', fontsize=12)
        ax.set_title(f'Power-distance JL residuals (ε = {epsilon}, r = {radius:.4g})',
                     fontsize=14, fontweight='bold')
        ax.legend(loc='upper right')
        return self._save(name)
