// DOM game board: renders the server's board string, forwards clicks,
// flashes rejected cells. No game logic lives here.

export class BoardView {
  private cells: HTMLButtonElement[] = []
  private banner: HTMLElement

  onCellClick: ((cell: number) => void) | null = null

  constructor(container: HTMLElement) {
    const grid = document.createElement('div')
    grid.className = 'board-grid'
    for (let i = 0; i < 9; i++) {
      const cell = document.createElement('button')
      cell.className = 'board-cell'
      cell.dataset.cell = String(i)
      cell.addEventListener('click', () => this.onCellClick?.(i))
      grid.appendChild(cell)
      this.cells.push(cell)
    }
    this.banner = document.createElement('div')
    this.banner.className = 'board-banner'
    container.appendChild(grid)
    container.appendChild(this.banner)
  }

  render(board: string, status: string, sideToMove: string): void {
    for (let i = 0; i < 9; i++) {
      const token = board[i] ?? '.'
      this.cells[i].textContent = token === '.' ? '' : token
      this.cells[i].disabled = status !== 'in_progress' || token !== '.'
    }
    if (status === 'in_progress') {
      this.banner.textContent = sideToMove === 'O' ? 'your move (O)' : 'robot is thinking'
    } else {
      this.banner.textContent =
        status === 'draw' ? 'draw' : status === 'O_wins' ? 'you win!' : 'robot wins'
      for (const cell of this.cells) cell.disabled = true
    }
  }

  flash(cell: number): void {
    const el = this.cells[cell]
    el.classList.add('flash')
    setTimeout(() => el.classList.remove('flash'), 400)
  }
}
